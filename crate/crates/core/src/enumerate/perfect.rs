//! Perfect forms by Voronoi's neighbor algorithm.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

use super::classes::ClassStore;
use crate::cone::{cone_facets, Facet};
use crate::equiv::automorphism_group;
use crate::error::{Error, Result};
use crate::forms::config::{apply, normalize_vector, VectorConfiguration};
use crate::forms::form::QuadraticForm;
use crate::forms::minvec::{minimal_vectors, vectors_below};
use crate::forms::perfection::{perfection_rank, sym_dim, sym_vec};
use crate::linalg::{rat, QMat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectForm {
    /// Scaled to minimum 1.
    pub form: QuadraticForm,
    pub min_vectors: VectorConfiguration,
}

impl PerfectForm {
    pub fn new(form: &QuadraticForm) -> Result<Self> {
        let (m, v) = minimal_vectors(form)?;
        let form = form.scale(&m.recip());
        if perfection_rank(&v) != sym_dim(form.dim()) {
            return Err(Error::Invalid("form is not perfect".into()));
        }
        Ok(PerfectForm { form, min_vectors: v })
    }
}

/// The symmetric matrix `F` with `F[x] = ℓ · sym_vec(x)`.
pub fn functional_to_form(n: usize, normal: &[i64]) -> QuadraticForm {
    let mut m = QMat::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            if i == j {
                m.set(i, i, rat(normal[k], 1));
            } else {
                m.set(i, j, rat(normal[k], 2));
                m.set(j, i, rat(normal[k], 2));
            }
            k += 1;
        }
    }
    QuadraticForm::new(m).expect("symmetric")
}

fn add(a: &QuadraticForm, t: &Rat, f: &QuadraticForm) -> QuadraticForm {
    let n = a.dim();
    let mut m = a.entries().clone();
    for i in 0..n {
        for j in 0..n {
            let x = m.at(i, j) + t * f.at(i, j);
            m.set(i, j, x);
        }
    }
    QuadraticForm::new(m).expect("symmetric")
}

/// The perfect form across the facet with normal form `f` of the perfect
/// domain of `a` (minimum 1).
pub fn voronoi_neighbor(a: &QuadraticForm, f: &QuadraticForm) -> Result<QuadraticForm> {
    let one = Rat::one();
    let mut lo = Rat::zero();
    let mut hi: Option<Rat> = None;
    let mut u = Rat::one();
    for _ in 0..512 {
        let b = add(a, &u, f);
        if !b.is_positive_definite() {
            hi = Some(u.clone());
        } else {
            let below = vectors_below(&b, &one)?;
            if below.is_empty() {
                lo = u.clone();
            } else {
                let rho = below
                    .iter()
                    .filter_map(|v| {
                        let fv = f.eval(v);
                        fv.is_negative().then(|| (a.eval(v) - &one) / -fv)
                    })
                    .min()
                    .expect("vector below the minimum has F[v] < 0");
                return Ok(add(a, &rho, f));
            }
        }
        u = match &hi {
            Some(h) => (&lo + h) / Rat::from_integer(2.into()),
            None => &lo * Rat::from_integer(2.into()),
        };
    }
    Err(Error::Invalid("neighbor search did not converge".into()))
}

/// Facets of the perfect domain of `p`, up to its automorphism group.
pub fn facet_orbits(p: &PerfectForm) -> Result<Vec<Facet>> {
    let v = &p.min_vectors;
    let gens: Vec<Vec<i64>> = v.vectors().iter().map(|x| sym_vec(x)).collect();
    let facets = cone_facets(&gens)?;
    let group = automorphism_group(v)?;
    let index: HashMap<Vec<i64>, usize> = v.vectors().iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let perms: Vec<Vec<usize>> = group
        .generators
        .iter()
        .map(|g| v.vectors().iter().map(|x| index[&normalize_vector(&apply(g, x))]).collect())
        .collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for f in facets {
        if seen.contains(&f.support) {
            continue;
        }
        let mut stack = vec![f.support.clone()];
        seen.insert(f.support.clone());
        while let Some(s) = stack.pop() {
            for perm in &perms {
                let mut t: Vec<usize> = s.iter().map(|&i| perm[i]).collect();
                t.sort_unstable();
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// One perfect form per class in dimension `n`, starting from `A_n` and
/// closing the neighbor graph. Output in canonical class order.
pub fn enumerate_perfect_forms(n: usize) -> Result<Vec<PerfectForm>> {
    if n == 0 {
        return Err(Error::Invalid("dimension 0".into()));
    }
    let seed = PerfectForm::new(&QuadraticForm::voronoi_first(n))?;
    let mut store = ClassStore::new();
    store.insert(seed.min_vectors.clone())?;
    let mut forms = vec![seed];
    let mut next = 0;
    while next < forms.len() {
        let p = forms[next].clone();
        next += 1;
        if n == 1 {
            break;
        }
        for f in facet_orbits(&p)? {
            let nf = functional_to_form(n, &f.normal);
            let q = PerfectForm::new(&voronoi_neighbor(&p.form, &nf)?)?;
            if store.insert(q.min_vectors.clone())? {
                log::debug!("n={n}: perfect form {} with {} vector pairs", forms.len() + 1, q.min_vectors.len());
                forms.push(q);
            }
        }
    }
    let order = store.into_sorted();
    forms.sort_by_key(|p| order.iter().position(|v| *v == p.min_vectors));
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_up_to_five() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_perfect_forms(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3]);
    }

    #[test]
    fn a2_is_simplicial() {
        let p = PerfectForm::new(&QuadraticForm::voronoi_first(2)).unwrap();
        assert_eq!(p.min_vectors.len(), 3);
        let gens: Vec<Vec<i64>> = p.min_vectors.vectors().iter().map(|x| sym_vec(x)).collect();
        assert_eq!(cone_facets(&gens).unwrap().len(), 3);
    }
}
