//! The Voronoi complex of `GL_N(Z)`: layers of well-rounded cells graded by
//! perfection rank, their facets, incidence numbers and differentials.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cone::cone_facets;
use crate::enumerate::classes::sort_canonical;
use crate::enumerate::{enumerate_rank_n, enumerate_rank_plus, ClassStore, RankNOptions, RankPlusOptions};
use crate::equiv::{automorphism_group, unimodular_inverse, IntMat, OrientationFrame, StabilizerGroup};
use crate::error::{Error, Result};
use crate::forms::{apply, perfection_rank, sym_vec, VectorConfiguration};
use crate::linalg::QMat;

/// A cell `σ(V)` of the Voronoi complex, with its fixed orientation.
#[derive(Clone, Debug)]
pub struct Cell {
    pub config: VectorConfiguration,
    /// Perfection rank, the dimension of the cone.
    pub rank: usize,
    pub stabilizer: StabilizerGroup,
    pub orientation_faithful: bool,
    pub frame: OrientationFrame,
}

impl Cell {
    pub fn new(config: VectorConfiguration) -> Result<Self> {
        let stabilizer = automorphism_group(&config)?;
        let frame = OrientationFrame::new(&config);
        Ok(Cell {
            rank: perfection_rank(&config),
            orientation_faithful: stabilizer.orientation_faithful(),
            stabilizer,
            frame,
            config,
        })
    }

    /// Projective dimension of the cell.
    pub fn cell_dim(&self) -> usize {
        self.rank - 1
    }
}

/// `Σ_r^⋆` with the sublist `Σ_r` of orientable cells.
#[derive(Clone, Debug)]
pub struct RankLayer {
    pub rank: usize,
    pub sigma_star: Vec<Cell>,
    /// Indices into `sigma_star` of the orientable cells.
    pub sigma: Vec<usize>,
    store: ClassStore,
}

impl RankLayer {
    /// Builds a layer from class representatives of one rank, sorting them
    /// canonically.
    pub fn new(rank: usize, mut configs: Vec<VectorConfiguration>) -> Result<Self> {
        sort_canonical(&mut configs);
        let sigma_star: Vec<Cell> = configs.into_par_iter().map(Cell::new).collect::<Result<_>>()?;
        let mut store = ClassStore::new();
        for c in &sigma_star {
            if c.rank != rank {
                return Err(Error::Invalid(format!("cell of rank {} in layer {rank}", c.rank)));
            }
            if !store.insert(c.config.clone())? {
                return Err(Error::Invalid("layer contains equivalent cells".into()));
            }
        }
        let sigma = (0..sigma_star.len()).filter(|&i| sigma_star[i].orientation_faithful).collect();
        Ok(RankLayer { rank, sigma_star, sigma, store })
    }

    /// The class of `v` in this layer and `g` with `g·v` its representative.
    pub fn locate(&self, v: &VectorConfiguration) -> Result<Option<(usize, IntMat)>> {
        self.store.find(v)
    }

    /// Position of `sigma_star[i]` in `sigma`.
    pub fn sigma_position(&self, i: usize) -> Option<usize> {
        self.sigma.binary_search(&i).ok()
    }
}

/// Codimension-one faces of the cell as subconfigurations, each flagged by
/// whether it is well-rounded.
pub fn faces_of_cell(sigma: &Cell) -> Result<Vec<(VectorConfiguration, bool)>> {
    faces_of_config(&sigma.config)
}

pub fn faces_of_config(v: &VectorConfiguration) -> Result<Vec<(VectorConfiguration, bool)>> {
    let gens: Vec<Vec<i64>> = v.vectors().iter().map(|x| sym_vec(x)).collect();
    let facets = cone_facets(&gens)?;
    Ok(facets
        .into_iter()
        .map(|f| {
            let face = v.subset(|i| f.support.binary_search(&i).is_ok());
            let wr = face.is_well_rounded();
            (face, wr)
        })
        .collect())
}

/// `ε(τ′, σ)·η(τ, τ′)` for the face `τ′ = γ·τ` of `σ`: the orientation
/// sign in `σ` of `γ` applied to the basis of `τ`, followed by `v vᵗ`
/// for any `v ∈ m(σ) ∖ m(τ′)`.
fn face_sign(sigma: &Cell, face: &VectorConfiguration, tau: &Cell, gamma: &IntMat) -> i64 {
    let r = sigma.rank;
    let mut cols: Vec<Vec<_>> = tau.frame.basis_vectors().iter().map(|b| sigma.frame.coordinates(&apply(gamma, b))).collect();
    let mut sign = 0;
    for v in sigma.config.vectors().iter().filter(|v| !face.contains(v)) {
        cols.push(sigma.frame.coordinates(v));
        let m = QMat::from_rows(&(0..r).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect::<Vec<_>>());
        let d = m.det();
        cols.pop();
        assert!(!d.is_zero(), "face span plus v v^t is degenerate");
        let s = if d.is_positive() { 1 } else { -1 };
        assert!(sign == 0 || sign == s, "face orientation depends on the chosen vector");
        sign = s;
    }
    sign
}

/// `[σ : τ]`, summed over the faces of `σ` equivalent to `τ`.
pub fn incidence_number(sigma: &Cell, tau: &Cell) -> Result<i64> {
    let mut total = 0;
    for (face, wr) in faces_of_cell(sigma)? {
        if !wr || face.len() != tau.config.len() {
            continue;
        }
        if let Some(g) = crate::equiv::are_equivalent(&tau.config, &face)? {
            if !tau.orientation_faithful {
                return Err(Error::MissingOrientation("the face class is not orientable".into()));
            }
            total += face_sign(sigma, &face, tau, &g);
        }
    }
    Ok(total)
}

/// Row of the differential for `σ`: incidence numbers against the cells of
/// `Σ_{r−1}^⋆`, keyed by index into `lower.sigma_star`. Non-orientable
/// face classes are kept so the caller can drop them.
pub fn boundary(sigma: &Cell, lower: &RankLayer) -> Result<BTreeMap<usize, i64>> {
    let mut row = BTreeMap::new();
    for (face, wr) in faces_of_cell(sigma)? {
        if !wr {
            continue;
        }
        let (idx, g) = lower.locate(&face)?.ok_or_else(|| {
            Error::IncompleteLayers(format!("face {face:?} of a rank {} cell has no class in rank {}", sigma.rank, lower.rank))
        })?;
        let tau = &lower.sigma_star[idx];
        let gamma = unimodular_inverse(&g).expect("equivalence is unimodular");
        *row.entry(idx).or_insert(0) += if tau.orientation_faithful { face_sign(sigma, &face, tau, &gamma) } else { 0 };
    }
    Ok(row)
}

/// Sparse integer matrix in row-major triplet form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `(i, j, value)`, sorted, nonzero values only.
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn from_triplets(rows: usize, cols: usize, mut entries: Vec<(usize, usize, i64)>) -> Self {
        entries.retain(|e| e.2 != 0);
        entries.sort_unstable();
        SparseMatrix { rows, cols, entries }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for &(i, j, x) in &self.entries {
            m[i][j] = x;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether `self · rhs` vanishes.
    pub fn product_is_zero(&self, rhs: &SparseMatrix) -> bool {
        assert_eq!(self.cols, rhs.rows);
        let mut by_row: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for &(i, j, x) in &rhs.entries {
            by_row.entry(i).or_default().push((j, x));
        }
        let mut acc: BTreeMap<(usize, usize), i128> = BTreeMap::new();
        for &(i, k, x) in &self.entries {
            for &(j, y) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                *acc.entry((i, j)).or_insert(0) += x as i128 * y as i128;
            }
        }
        acc.values().all(|&v| v == 0)
    }

    /// Text form: header `rank rows cols nnz`, then `i j value` lines.
    pub fn to_text(&self, rank: usize) -> String {
        let mut s = format!("{rank} {} {} {}\n", self.rows, self.cols, self.entries.len());
        for (i, j, x) in &self.entries {
            writeln!(s, "{i} {j} {x}").unwrap();
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<(usize, SparseMatrix)> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse = |line: usize, l: &str, k: usize| -> Result<Vec<i64>> {
            let xs: Vec<i64> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line: line + 1, msg: format!("bad integer {t:?}") }))
                .collect::<Result<_>>()?;
            if xs.len() != k {
                return Err(Error::Parse { line: line + 1, msg: format!("expected {k} fields") });
            }
            Ok(xs)
        };
        let (ln, head) = lines.next().ok_or_else(|| Error::IncompleteInput("missing header".into()))?;
        let h = parse(ln, head, 4)?;
        let (rank, rows, cols, nnz) = (h[0] as usize, h[1] as usize, h[2] as usize, h[3] as usize);
        let mut entries = Vec::with_capacity(nnz);
        for (ln, l) in lines {
            let e = parse(ln, l, 3)?;
            if e[0] < 0 || e[1] < 0 || e[0] as usize >= rows || e[1] as usize >= cols {
                return Err(Error::Parse { line: ln + 1, msg: "entry out of range".into() });
            }
            entries.push((e[0] as usize, e[1] as usize, e[2]));
        }
        if entries.len() != nnz {
            return Err(Error::IncompleteInput(format!("expected {nnz} entries, found {}", entries.len())));
        }
        Ok((rank, SparseMatrix::from_triplets(rows, cols, entries)))
    }
}

/// Free modules `V_r` on `Σ_r` and the differentials `d_r : V_r → V_{r−1}`.
#[derive(Clone, Debug)]
pub struct VoronoiComplexData {
    pub dim: usize,
    /// Ranks present, ascending.
    pub ranks: Vec<usize>,
    /// `|Σ_r^⋆|` per rank.
    pub sigma_star_sizes: BTreeMap<usize, usize>,
    /// `|Σ_r|` per rank.
    pub sigma_sizes: BTreeMap<usize, usize>,
    /// `d_r` with rows indexed by `Σ_{r−1}` and columns by `Σ_r`. Present
    /// for every rank; `d_r` for the lowest rank has no rows.
    pub differentials: BTreeMap<usize, SparseMatrix>,
}

impl VoronoiComplexData {
    pub fn sigma_size(&self, r: usize) -> usize {
        self.sigma_sizes.get(&r).copied().unwrap_or(0)
    }

    pub fn differential(&self, r: usize) -> SparseMatrix {
        self.differentials.get(&r).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.sigma_size(r - 1), self.sigma_size(r)))
    }
}

/// Layers `Σ_r^⋆` for `r = N, …, top`.
pub fn build_layers(n: usize, top: usize) -> Result<Vec<RankLayer>> {
    let mut configs: Vec<VectorConfiguration> =
        enumerate_rank_n(n, &RankNOptions::default())?.into_iter().map(|c| c.config).collect();
    let mut layers = vec![RankLayer::new(n, configs.clone())?];
    for r in n + 1..=top.min(n * (n + 1) / 2) {
        configs = enumerate_rank_plus(n, r, &configs, &RankPlusOptions::default())?;
        log::info!("n={n}: {} classes of rank {r}", configs.len());
        layers.push(RankLayer::new(r, configs.clone())?);
    }
    Ok(layers)
}

/// Differentials between consecutive layers; every well-rounded facet of a
/// cell must have its class in the layer below.
pub fn assemble_complex(n: usize, layers: &[RankLayer]) -> Result<VoronoiComplexData> {
    for w in layers.windows(2) {
        if w[1].rank != w[0].rank + 1 {
            return Err(Error::IncompleteLayers(format!("rank {} follows rank {}", w[1].rank, w[0].rank)));
        }
    }
    if let Some(first) = layers.first() {
        if first.rank != n {
            return Err(Error::IncompleteLayers(format!("lowest layer has rank {}, expected {n}", first.rank)));
        }
    }
    let mut differentials = BTreeMap::new();
    for (k, layer) in layers.iter().enumerate() {
        let cols = layer.sigma.len();
        let Some(lower) = k.checked_sub(1).map(|j| &layers[j]) else {
            differentials.insert(layer.rank, SparseMatrix::zeros(0, cols));
            continue;
        };
        // every cell is checked for face completeness, orientable or not
        let rows_by_cell: Vec<BTreeMap<usize, i64>> =
            layer.sigma_star.par_iter().map(|c| boundary(c, lower)).collect::<Result<_>>()?;
        let mut entries = Vec::new();
        for (j, &cell) in layer.sigma.iter().enumerate() {
            for (&t, &x) in &rows_by_cell[cell] {
                if let Some(i) = lower.sigma_position(t) {
                    entries.push((i, j, x));
                }
            }
        }
        differentials.insert(layer.rank, SparseMatrix::from_triplets(lower.sigma.len(), cols, entries));
    }
    let data = VoronoiComplexData {
        dim: n,
        ranks: layers.iter().map(|l| l.rank).collect(),
        sigma_star_sizes: layers.iter().map(|l| (l.rank, l.sigma_star.len())).collect(),
        sigma_sizes: layers.iter().map(|l| (l.rank, l.sigma.len())).collect(),
        differentials,
    };
    if !verify_dd_zero(&data) {
        let r = data.ranks.iter().copied().find(|&r| !data.differential(r).product_is_zero(&data.differential(r + 1))).unwrap_or(n);
        return Err(Error::DifferentialSanityFailed(r));
    }
    Ok(data)
}

/// `d_{r−1} ∘ d_r = 0` for all consecutive ranks, exactly.
pub fn verify_dd_zero(c: &VoronoiComplexData) -> bool {
    c.ranks.windows(2).all(|w| {
        let (lo, hi) = (&c.differentials[&w[0]], &c.differentials[&w[1]]);
        lo.cols == hi.rows && lo.product_is_zero(hi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, v: Vec<Vec<i64>>) -> VectorConfiguration {
        VectorConfiguration::new(n, v).unwrap()
    }

    #[test]
    fn hexagonal_facets() {
        let hex = cfg(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let f = faces_of_config(&hex).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|(face, wr)| *wr && face.len() == 2 && perfection_rank(face) == 2));
    }

    #[test]
    fn basis_cell_facets() {
        let f = faces_of_config(&VectorConfiguration::standard_basis(2)).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(face, wr)| !*wr && face.len() == 1));
    }

    #[test]
    fn unrelated_face_has_zero_incidence() {
        let hex = Cell::new(cfg(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]])).unwrap();
        let other = Cell::new(cfg(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]])).unwrap();
        // a rank-3 cell is never a facet of a rank-3 cell
        assert_eq!(incidence_number(&hex, &other).unwrap(), 0);
    }

    #[test]
    fn dimension_two_complex() {
        let layers = build_layers(2, 3).unwrap();
        assert_eq!(layers.iter().map(|l| l.sigma_star.len()).collect::<Vec<_>>(), vec![1, 1]);
        let c = assemble_complex(2, &layers).unwrap();
        assert!(verify_dd_zero(&c));
    }

    #[test]
    fn mutation_breaks_dd() {
        let mk = |rows, cols, e: Vec<(usize, usize, i64)>| SparseMatrix::from_triplets(rows, cols, e);
        let mut c = VoronoiComplexData {
            dim: 0,
            ranks: vec![1, 2, 3],
            sigma_star_sizes: BTreeMap::new(),
            sigma_sizes: [(1, 1), (2, 2), (3, 1)].into_iter().collect(),
            differentials: [
                (1, SparseMatrix::zeros(0, 1)),
                (2, mk(1, 2, vec![(0, 0, 1), (0, 1, 1)])),
                (3, mk(2, 1, vec![(0, 0, 1), (1, 0, -1)])),
            ]
            .into_iter()
            .collect(),
        };
        assert!(verify_dd_zero(&c));
        c.differentials.get_mut(&3).unwrap().entries[1].2 = 1;
        assert!(!verify_dd_zero(&c));
    }

    #[test]
    fn empty_complex() {
        let c = VoronoiComplexData {
            dim: 0,
            ranks: Vec::new(),
            sigma_star_sizes: BTreeMap::new(),
            sigma_sizes: BTreeMap::new(),
            differentials: BTreeMap::new(),
        };
        assert!(verify_dd_zero(&c));
    }

    #[test]
    fn triplet_round_trip() {
        let m = SparseMatrix::from_triplets(3, 2, vec![(2, 1, -4), (0, 0, 3)]);
        let (r, back) = SparseMatrix::parse_text(&m.to_text(5)).unwrap();
        assert_eq!((r, back), (5, m));
    }
}
