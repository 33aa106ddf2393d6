//! Facets of finitely generated rational cones by the double description
//! method.

use crate::error::{Error, Result};
use crate::linalg::rank_i64;

/// A facet of `cone(g_1, …, g_m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    /// Indices of the generators on the facet.
    pub support: Vec<usize>,
    /// Integral functional, nonnegative on the generators and zero on the
    /// support. Only meaningful on the linear span of the generators.
    pub normal: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Bits(u128);

impl Bits {
    fn set(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }
    fn and(self, o: Bits) -> Bits {
        Bits(self.0 & o.0)
    }
    fn count(self) -> u32 {
        self.0.count_ones()
    }
    fn iter(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&i| self.0 >> i & 1 == 1)
    }
}

struct Ray {
    y: Vec<i128>,
    zeros: Bits,
}

pub(crate) const P1: u64 = 2_305_843_009_213_693_951; // 2^61 - 1
pub(crate) const P2: u64 = 2_305_843_009_213_693_921;

pub(crate) fn rank_mod(rows: &[&[i64]], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> =
        rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for k in c..ncols {
            m[rank][k] = mul_mod(m[rank][k], inv, p);
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for k in c..ncols {
                    let t = mul_mod(f, m[rank][k], p);
                    m[i][k] = (m[i][k] + p - t) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn primitive(y: &mut [i128]) {
    let g = y.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        y.iter_mut().for_each(|x| *x /= g);
    }
}

fn dot(g: &[i64], y: &[i128]) -> Result<i128> {
    let mut s: i128 = 0;
    for (&a, &b) in g.iter().zip(y) {
        s = (a as i128).checked_mul(b).and_then(|t| s.checked_add(t)).ok_or(overflow())?;
    }
    Ok(s)
}

fn overflow() -> Error {
    Error::Invalid("coefficient overflow in double description".into())
}

/// Facets of the cone spanned by `gens` inside its own linear span, sorted
/// by support. At most 128 generators.
pub fn cone_facets(gens: &[Vec<i64>]) -> Result<Vec<Facet>> {
    let m = gens.len();
    if m > 128 {
        return Err(Error::Invalid("more than 128 generators".into()));
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let d = gens[0].len();
    let r = rank_i64(gens);
    if r <= 1 {
        // a ray (or the origin) has the origin as its only proper face
        return Ok(if r == 1 { vec![Facet { support: Vec::new(), normal: vec![0; d] }] } else { Vec::new() });
    }
    // coordinates on which the span projects isomorphically
    let pivots = pivot_columns(gens, r);
    let g: Vec<Vec<i64>> = gens.iter().map(|x| pivots.iter().map(|&c| x[c]).collect()).collect();

    let max_norm = g.iter().map(|x| x.iter().map(|&a| (a as f64).powi(2)).sum::<f64>().sqrt()).fold(1.0, f64::max);
    let modular_exact = (r as f64) * max_norm.log2() < 120.0;

    let mut order: Vec<usize> = Vec::new();
    let mut basis_rows: Vec<Vec<i64>> = Vec::new();
    for (i, x) in g.iter().enumerate() {
        basis_rows.push(x.clone());
        if rank_i64(&basis_rows) == basis_rows.len() {
            order.push(i);
        } else {
            basis_rows.pop();
        }
        if order.len() == r {
            break;
        }
    }
    let mut rays = initial_rays(&g, &order)?;
    let mut done = Bits(0);
    for &i in &order {
        done.set(i);
    }
    let rest: Vec<usize> = (0..m).filter(|i| !order.contains(i)).collect();
    for &i in &rest {
        let s: Vec<i128> = rays.iter().map(|ray| dot(&g[i], &ray.y)).collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| s[k] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| s[k] < 0).collect();
        if neg.is_empty() {
            for (k, ray) in rays.iter_mut().enumerate() {
                if s[k] == 0 {
                    ray.zeros.set(i);
                }
            }
            done.set(i);
            continue;
        }
        let mut fresh: Vec<Ray> = Vec::new();
        for &a in &pos {
            for &b in &neg {
                let z = rays[a].zeros.and(rays[b].zeros);
                if (z.count() as usize) + 2 < r {
                    continue;
                }
                if !adjacent(&g, z, r, modular_exact, &rays, a, b) {
                    continue;
                }
                let (sa, sb) = (s[a], -s[b]);
                let mut y = Vec::with_capacity(r);
                for k in 0..r {
                    let t = sa
                        .checked_mul(rays[b].y[k])
                        .and_then(|u| sb.checked_mul(rays[a].y[k]).and_then(|v| u.checked_add(v)))
                        .ok_or(overflow())?;
                    y.push(t);
                }
                primitive(&mut y);
                let mut zeros = z;
                zeros.set(i);
                fresh.push(Ray { y, zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (k, mut ray) in rays.into_iter().enumerate() {
            if s[k] > 0 {
                next.push(ray);
            } else if s[k] == 0 {
                ray.zeros.set(i);
                next.push(ray);
            }
        }
        next.extend(fresh);
        rays = next;
        done.set(i);
    }
    let mut out: Vec<Facet> = rays
        .into_iter()
        .map(|ray| {
            let mut normal = vec![0i64; d];
            for (k, &c) in pivots.iter().enumerate() {
                normal[c] = i64::try_from(ray.y[k]).expect("facet normal fits in i64");
            }
            Facet { support: ray.zeros.iter().collect(), normal }
        })
        .collect();
    out.sort();
    for f in &out {
        debug_assert!(gens.iter().all(|x| x.iter().zip(&f.normal).map(|(a, b)| a * b).sum::<i64>() >= 0));
    }
    Ok(out)
}

fn pivot_columns(gens: &[Vec<i64>], r: usize) -> Vec<usize> {
    let d = gens[0].len();
    let mut cols: Vec<usize> = Vec::new();
    for c in 0..d {
        cols.push(c);
        let sub: Vec<Vec<i64>> = gens.iter().map(|x| cols.iter().map(|&k| x[k]).collect()).collect();
        if rank_i64(&sub) < cols.len() {
            cols.pop();
        }
        if cols.len() == r {
            break;
        }
    }
    cols
}

fn initial_rays(g: &[Vec<i64>], order: &[usize]) -> Result<Vec<Ray>> {
    use crate::linalg::{primitive_integer_vector, QMat};
    let r = order.len();
    let b = QMat::from_i64_rows(&order.iter().map(|&i| g[i].clone()).collect::<Vec<_>>());
    let inv = b.inverse().expect("independent generators");
    let mut rays = Vec::with_capacity(r);
    for k in 0..r {
        let col: Vec<_> = (0..r).map(|i| inv.at(i, k).clone()).collect();
        let y: Vec<i128> = primitive_integer_vector(&col)
            .iter()
            .map(|x| i128::try_from(x).map_err(|_| overflow()))
            .collect::<Result<_>>()?;
        // primitive_integer_vector keeps the sign of the rational vector
        let mut zeros = Bits(0);
        for (j, &i) in order.iter().enumerate() {
            if j != k {
                zeros.set(i);
            }
        }
        debug_assert!(dot(&g[order[k]], &y)? > 0);
        rays.push(Ray { y, zeros });
    }
    Ok(rays)
}

fn adjacent(g: &[Vec<i64>], z: Bits, r: usize, modular_exact: bool, rays: &[Ray], a: usize, b: usize) -> bool {
    let rows: Vec<&[i64]> = z.iter().map(|i| g[i].as_slice()).collect();
    if rank_mod(&rows, P1) + 2 == r || rank_mod(&rows, P2) + 2 == r {
        return true;
    }
    if modular_exact {
        return false;
    }
    // combinatorial test
    !rays.iter().enumerate().any(|(k, q)| k != a && k != b && q.zeros.and(z) == z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_pyramid() {
        let gens = vec![vec![1, 1, 1], vec![1, -1, 1], vec![-1, 1, 1], vec![-1, -1, 1]];
        let f = cone_facets(&gens).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|x| x.support.len() == 2));
    }

    #[test]
    fn simplicial_cone_in_subspace() {
        // three rays spanning a 2-dimensional subspace of R^3
        let gens = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]];
        let f = cone_facets(&gens).unwrap();
        let supports: Vec<_> = f.iter().map(|x| x.support.clone()).collect();
        assert_eq!(supports, vec![vec![0], vec![1]]);
    }

    #[test]
    fn octahedral_cone() {
        // cone over a regular octahedron: 6 rays, 8 facets
        let gens = vec![
            vec![1, 0, 0, 1],
            vec![-1, 0, 0, 1],
            vec![0, 1, 0, 1],
            vec![0, -1, 0, 1],
            vec![0, 0, 1, 1],
            vec![0, 0, -1, 1],
        ];
        let f = cone_facets(&gens).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|x| x.support.len() == 3));
    }
}
