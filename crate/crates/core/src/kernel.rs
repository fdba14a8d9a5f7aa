//! Kernel dimensions of right multiplication by matrices over `RW`.
//!
//! Right multiplication by `M` on `(L^2_q W)^m` splits along
//! `L^2_q W = K+ (+) K- (+) (K_empty (+) K_empty s)`. On the one-dimensional
//! summands `K+` and `K-` an entry `y1(z) + y2(z) s` acts by the scalar
//! `y1(±1) + sigma y2(±1)`, where `sigma` is the sign by which `s` acts there.
//! On `K_empty` every nonzero element of `RG` is injective, so the multiplicity
//! `c` is the corank of the block matrix `[[M1(z), M2(z)], [M2(1/z), M1(1/z)]]`
//! over the rational function field. With `a`, `b`, `c` in hand,
//!
//! ```text
//! dim = a dim K+ + b dim K- + (c / 2) dim K_empty
//! ```

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Signed, Zero};

use crate::dihedral::{Cmp, Params, Region, Word};
use crate::hecke::{convert_basis, kappa_norm_sq, Basis, HeckeElem, KappaSpec};
use crate::laurent::LaurentPoly;
use crate::matrix::{LaurentMatrix, RatMatrix};
use crate::rational::{fmt_q, q, qi, Q};
use crate::Error;

/// `y1(z) + y2(z) s` with `z = st`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GwElem {
    pub y1: LaurentPoly,
    pub y2: LaurentPoly,
}

impl GwElem {
    pub fn new(y1: LaurentPoly, y2: LaurentPoly) -> Self {
        GwElem { y1, y2 }
    }

    pub fn is_zero(&self) -> bool {
        self.y1.is_zero() && self.y2.is_zero()
    }

    /// Normal form of a group-basis element: `z^n` feeds `y1`, `z^n s` feeds `y2`.
    pub fn from_group(x: &HeckeElem) -> Result<Self, Error> {
        if x.basis() != Basis::Group {
            return Err(Error::BasisMismatch { expected: Basis::Group, found: x.basis() });
        }
        let mut out = GwElem::default();
        for (w, c) in x.terms() {
            let slot = if w.refl { &mut out.y2 } else { &mut out.y1 };
            slot.add_term(w.n, c.clone());
        }
        Ok(out)
    }

    pub fn to_group(&self) -> HeckeElem {
        let a = self.y1.terms().map(|(k, c)| (Word::z(k), c.clone()));
        let b = self.y2.terms().map(|(k, c)| (Word::new(k, true), c.clone()));
        HeckeElem::from_terms(Basis::Group, a.chain(b))
    }

    /// Scalar by which right multiplication acts on a vector `x` with
    /// `x z = lambda x` and `x s = sigma x`.
    pub fn scalar_on(&self, lambda: &Q, sigma: i8) -> Q {
        let y1 = self.y1.eval(lambda).expect("lambda is ±1");
        let y2 = self.y2.eval(lambda).expect("lambda is ±1");
        y1 + qi(sigma as i64) * y2
    }
}

impl Mul for &GwElem {
    type Output = GwElem;

    /// `(y1 + y2 s)(u1 + u2 s) = (y1 u1 + y2 bar(u2)) + (y1 u2 + y2 bar(u1)) s`.
    fn mul(self, rhs: &GwElem) -> GwElem {
        GwElem {
            y1: &(&self.y1 * &rhs.y1) + &(&self.y2 * &rhs.y2.bar()),
            y2: &(&self.y1 * &rhs.y2) + &(&self.y2 * &rhs.y1.bar()),
        }
    }
}

/// Matrix with entries in `RW`, all in one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeMatrix {
    rows: usize,
    cols: usize,
    basis: Basis,
    entries: Vec<HeckeElem>,
}

impl HeckeMatrix {
    pub fn new(basis: Basis, rows: Vec<Vec<HeckeElem>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Shape("matrix must be at least 1x1".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries: Vec<HeckeElem> = rows.into_iter().flatten().collect();
        if let Some(e) = entries.iter().find(|e| e.basis() != basis) {
            return Err(Error::BasisMismatch { expected: basis, found: e.basis() });
        }
        Ok(HeckeMatrix { rows: r, cols: c, basis, entries })
    }

    pub fn single(e: HeckeElem) -> Self {
        let basis = e.basis();
        HeckeMatrix { rows: 1, cols: 1, basis, entries: vec![e] }
    }

    pub fn zeros(basis: Basis, rows: usize, cols: usize) -> Self {
        HeckeMatrix { rows, cols, basis, entries: vec![HeckeElem::zero(basis); rows * cols] }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> &HeckeElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: HeckeElem) {
        assert_eq!(e.basis(), self.basis);
        self.entries[i * self.cols + j] = e;
    }

    pub fn to_rows(&self) -> Vec<Vec<HeckeElem>> {
        self.entries.chunks(self.cols).map(<[HeckeElem]>::to_vec).collect()
    }
}

/// Where the `RW`-entries of an [`RwMatrix`] came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Group,
    /// Converted from the Hecke basis at these parameters.
    Tau(Params),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RwMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GwElem>,
    provenance: Provenance,
}

impl RwMatrix {
    pub fn from_gw(rows: Vec<Vec<GwElem>>, provenance: Provenance) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("expected a nonempty rectangular grid".into()));
        }
        Ok(RwMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect(), provenance })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &GwElem {
        &self.entries[i * self.cols + j]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Matrix with one zero row appended.
    pub fn with_zero_row(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(std::iter::repeat_n(GwElem::default(), self.cols));
        RwMatrix { rows: self.rows + 1, entries, ..self.clone() }
    }

    /// Matrix with one zero column appended.
    pub fn with_zero_col(&self) -> Self {
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for row in self.entries.chunks(self.cols) {
            entries.extend_from_slice(row);
            entries.push(GwElem::default());
        }
        RwMatrix { cols: self.cols + 1, entries, ..self.clone() }
    }
}

/// Rewrites every entry as `y1(z) + y2(z) s`; Hecke-basis entries are first
/// converted to the group basis at `p`.
pub fn split_gw(m: &HeckeMatrix, p: &Params) -> RwMatrix {
    let provenance = match m.basis {
        Basis::Group => Provenance::Group,
        Basis::Tau => Provenance::Tau(p.clone()),
    };
    let entries = m
        .entries
        .iter()
        .map(|e| {
            let g = convert_basis(e, Basis::Group, p);
            GwElem::from_group(&g).expect("group basis")
        })
        .collect();
    RwMatrix { rows: m.rows, cols: m.cols, entries, provenance }
}

/// The three reductions of an `RW`-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Scalar action on `K+^m`.
    pub a_plus: RatMatrix,
    /// Scalar action on `K-^m`.
    pub a_minus: RatMatrix,
    /// `2m x 2n` block matrix acting on `K_empty^{2m}`.
    pub m_empty: LaurentMatrix,
    /// False on `q_s q_t = 1`, where `K+` vanishes and `a_plus` was built with sign `+1`.
    pub plus_relevant: bool,
    /// False on `q_s = q_t`, where `K-` vanishes and `a_minus` was built with sign `+1`.
    pub minus_relevant: bool,
}

pub fn component_matrices(m: &RwMatrix, region: Region) -> Components {
    let (rows, cols) = m.shape();
    let sigma_plus = region.sigma_plus();
    let sigma_minus = region.sigma_minus();
    let mut a_plus = RatMatrix::zeros(rows, cols);
    let mut a_minus = RatMatrix::zeros(rows, cols);
    let mut m_empty = LaurentMatrix::zeros(2 * rows, 2 * cols);
    for i in 0..rows {
        for j in 0..cols {
            let e = m.get(i, j);
            a_plus.set(i, j, e.scalar_on(&qi(1), sigma_plus.unwrap_or(1)));
            a_minus.set(i, j, e.scalar_on(&qi(-1), sigma_minus.unwrap_or(1)));
            m_empty.set(i, j, e.y1.clone());
            m_empty.set(i, cols + j, e.y2.clone());
            m_empty.set(rows + i, j, e.y2.bar());
            m_empty.set(rows + i, cols + j, e.y1.bar());
        }
    }
    Components {
        a_plus,
        a_minus,
        m_empty,
        plus_relevant: sigma_plus.is_some(),
        minus_relevant: sigma_minus.is_some(),
    }
}

/// Von Neumann dimensions over `G` of `K+`, `K-`, `K_empty`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDims {
    pub plus: Q,
    pub minus: Q,
    pub empty: Q,
}

/// `dim K± = 1 / ||kappa±||^2` (zero where the vector vanishes); `dim K_empty`
/// from its four-case closed form.
pub fn dims_of_k(p: &Params) -> KDims {
    let inv_norm = |spec: Option<KappaSpec>| match spec {
        Some(k) => kappa_norm_sq(&k, p).expect("kappa± converges off the boundary").recip(),
        None => Q::zero(),
    };
    let plus = inv_norm(KappaSpec::plus(p));
    let minus = inv_norm(KappaSpec::minus(p));
    let one = Q::one();
    let below = &p.q_s * &p.q_t <= one;
    let empty = match (below, p.q_s <= p.q_t) {
        (true, true) => qi(2) * &p.q_s / (&one + &p.q_s),
        (true, false) => qi(2) * &p.q_t / (&one + &p.q_t),
        (false, true) => qi(2) / (&one + &p.q_t),
        (false, false) => qi(2) / (&one + &p.q_s),
    };
    KDims { plus, minus, empty }
}

/// Multiplicities of `K+`, `K-`, `K_empty` in the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Counts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, c={})", self.a, self.b, self.c)
    }
}

/// Integer coordinates `(alpha, beta, gamma)` with
/// `dim = alpha + beta/(1+q_s) + gamma/(1+q_t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cert {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl Cert {
    pub const fn new(alpha: i64, beta: i64, gamma: i64) -> Self {
        Cert { alpha, beta, gamma }
    }

    pub fn eval(&self, p: &Params) -> Q {
        let (u, v) = p.lambda_gens();
        qi(self.alpha) + qi(self.beta) * u + qi(self.gamma) * v
    }

    fn scaled(self, k: i64) -> Cert {
        Cert::new(self.alpha * k, self.beta * k, self.gamma * k)
    }

    fn plus(self, o: Cert) -> Cert {
        Cert::new(self.alpha + o.alpha, self.beta + o.beta, self.gamma + o.gamma)
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

impl fmt::Display for Cert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

/// Certificates of `dim K+`, `dim K-` and `dim K_empty / 2` on a stratum.
fn unit_certs(region: Region) -> (Cert, Cert, Cert) {
    // 1 - q_s q_t = c (u + v - 1) and q_s - q_t = c (v - u), with u = 1/(1+q_s), v = 1/(1+q_t)
    let plus = match region.cmp_prod {
        Cmp::Lt => Cert::new(-1, 1, 1),
        Cmp::Gt => Cert::new(1, -1, -1),
        Cmp::Eq => Cert::default(),
    };
    let minus = match region.cmp_pair {
        Cmp::Lt => Cert::new(0, 1, -1),
        Cmp::Gt => Cert::new(0, -1, 1),
        Cmp::Eq => Cert::default(),
    };
    let below = region.cmp_prod != Cmp::Gt;
    let half_empty = match (below, region.cmp_pair != Cmp::Gt) {
        (true, true) => Cert::new(1, -1, 0),
        (true, false) => Cert::new(1, 0, -1),
        (false, true) => Cert::new(0, 0, 1),
        (false, false) => Cert::new(0, 1, 0),
    };
    (plus, minus, half_empty)
}

/// Certificate of membership in the value group generated by `1`, `1/(1+q_s)`, `1/(1+q_t)`.
///
/// The triple is assembled from the counts and the region, then checked
/// against `dim` exactly.
pub fn lambda_certificate(dim: &Q, counts: Counts, p: &Params) -> Result<Cert, Error> {
    let (plus, minus, half_empty) = unit_certs(p.region());
    let cert = plus
        .scaled(counts.a as i64)
        .plus(minus.scaled(counts.b as i64))
        .plus(half_empty.scaled(counts.c as i64));
    if cert.eval(p) != *dim {
        return Err(Error::NotRepresentable {
            dim: fmt_q(dim),
            counts: counts.to_string(),
            params: p.to_string(),
        });
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimResult {
    pub rows: usize,
    pub counts: Counts,
    pub region: Region,
    pub dim: Q,
    pub cert: Cert,
    /// `a dim K+`, `b dim K-`, `(c/2) dim K_empty`.
    pub contributions: [Q; 3],
}

pub fn counts(m: &RwMatrix, region: Region) -> Counts {
    let comps = component_matrices(m, region);
    let rows = m.rows;
    Counts {
        a: rows - comps.a_plus.rank(),
        b: rows - comps.a_minus.rank(),
        c: 2 * rows - comps.m_empty.rank_fraction_field(),
    }
}

/// `dim_W^q ker R_M` at fixed parameters.
pub fn dim_ker(m: &RwMatrix, p: &Params) -> Result<DimResult, Error> {
    if let Provenance::Tau(split) = &m.provenance {
        if split != p {
            return Err(Error::ParamsMismatch {
                split: split.to_string(),
                requested: p.to_string(),
            });
        }
    }
    let region = p.region();
    let counts = counts(m, region);
    let k = dims_of_k(p);
    let contributions = [
        qi(counts.a as i64) * &k.plus,
        qi(counts.b as i64) * &k.minus,
        q(counts.c as i64, 2) * &k.empty,
    ];
    let dim: Q = contributions.iter().sum();
    let cert = lambda_certificate(&dim, counts, p)?;
    Ok(DimResult { rows: m.rows, counts, region, dim, cert, contributions })
}

/// Convenience: split then compute.
pub fn dim_ker_hecke(m: &HeckeMatrix, p: &Params) -> Result<DimResult, Error> {
    dim_ker(&split_gw(m, p), p)
}

/// Closed form on one stratum of the parameter plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionPiece {
    pub region: Region,
    pub counts: Counts,
    pub cert: Cert,
    /// Parameter points at which the counts were computed.
    pub samples: Vec<Params>,
}

/// The piecewise-rational dimension function of a fixed group-basis matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseDim {
    pub rows: usize,
    /// Open regions, in [`Region::OPEN`] order.
    pub open: Vec<RegionPiece>,
    /// Boundary arcs and the point `(1, 1)`.
    pub boundary: Vec<RegionPiece>,
}

impl PiecewiseDim {
    pub fn piece(&self, region: Region) -> Option<&RegionPiece> {
        self.open.iter().chain(&self.boundary).find(|pc| pc.region == region)
    }

    /// Value of the closed form that applies at `p`.
    pub fn eval(&self, p: &Params) -> Q {
        self.piece(p.region()).expect("all strata present").cert.eval(p)
    }

    /// True when every open region adjacent to `p`'s stratum gives the same
    /// value at `p`, equal to the stratum's own closed form.
    pub fn continuous_at(&self, p: &Params) -> bool {
        let here = self.eval(p);
        p.region().adjacent_open().into_iter().all(|r| {
            self.piece(r).expect("open piece").cert.eval(p) == here
        })
    }

    /// True when the same closed form holds on all four open regions.
    pub fn is_global(&self) -> bool {
        self.open.windows(2).all(|w| w[0].cert == w[1].cert)
    }
}

/// Small-height parameter points inside a stratum, deterministic order, primary point first.
pub fn region_samples(region: Region) -> Vec<Params> {
    let primary = match (region.cmp_prod, region.cmp_pair) {
        (Cmp::Lt, Cmp::Lt) => Some(((1, 3), (1, 2))),
        (Cmp::Lt, Cmp::Gt) => Some(((1, 2), (1, 3))),
        (Cmp::Gt, Cmp::Lt) => Some(((2, 1), (3, 1))),
        (Cmp::Gt, Cmp::Gt) => Some(((3, 1), (2, 1))),
        _ => None,
    };
    let mut out: Vec<Params> = primary.map(|(a, b)| Params::from_ratios(a, b)).into_iter().collect();
    let heights = [
        (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (1, 4), (4, 1), (3, 4), (4, 3),
        (1, 5), (5, 1), (2, 5), (5, 2), (1, 7), (7, 1), (1, 1),
    ];
    for &a in &heights {
        for &b in &heights {
            let p = Params::from_ratios(a, b);
            if p.region() == region && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Computes the closed form on every stratum of the `(q_s, q_t)` plane.
///
/// Each open region is sampled at its primary point plus two more; if the
/// counts disagree, two fresh points are tried before giving up.
pub fn dim_piecewise(m: &HeckeMatrix) -> Result<PiecewiseDim, Error> {
    if m.basis() != Basis::Group {
        return Err(Error::PiecewiseNeedsGroupBasis);
    }
    let rw = split_gw(m, &Params::trivial());
    let mut open = Vec::new();
    let mut boundary = Vec::new();
    for region in Region::all() {
        let pool = region_samples(region);
        let wanted = if region.is_open() { 3 } else { 1 };
        let piece = sample_region(&rw, region, &pool, wanted)?;
        if region.is_open() {
            open.push(piece);
        } else {
            boundary.push(piece);
        }
    }
    let pw = PiecewiseDim { rows: rw.rows, open, boundary };
    for piece in &pw.boundary {
        for p in &piece.samples {
            if !pw.continuous_at(p) {
                return Err(Error::ConstancyViolation {
                    region: piece.region.to_string(),
                    detail: format!("adjacent closed forms disagree at {p}"),
                });
            }
        }
    }
    Ok(pw)
}

fn sample_region(
    rw: &RwMatrix,
    region: Region,
    pool: &[Params],
    wanted: usize,
) -> Result<RegionPiece, Error> {
    let eval = |p: &Params| dim_ker(rw, p).map(|r| (r.counts, r.cert));
    let (first_counts, first_cert) = eval(&pool[0])?;
    let mut samples = vec![pool[0].clone()];
    let mut rest = pool[1..].iter();
    let mut retries = 2;
    while samples.len() < wanted {
        let Some(p) = rest.next() else { break };
        let (c, cert) = eval(p)?;
        if c == first_counts && cert == first_cert {
            samples.push(p.clone());
        } else if retries == 0 {
            return Err(Error::ConstancyViolation {
                region: region.to_string(),
                detail: format!("{first_counts} at {} but {c} at {p}", pool[0]),
            });
        } else {
            retries -= 1;
        }
    }
    Ok(RegionPiece { region, counts: first_counts, cert: first_cert, samples })
}

/// `|x|` helper for oracle formulas.
pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::Gen;
    use crate::hecke::{a_gen, inner_product};

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(k, c)| (k, qi(c))))
    }

    fn one_minus_st() -> HeckeMatrix {
        HeckeMatrix::single(HeckeElem::from_terms(
            Basis::Group,
            [(Word::ONE, qi(1)), (Word::ST, qi(-1))],
        ))
    }

    #[test]
    fn split_examples() {
        let p = Params::trivial();
        let one = |e: HeckeElem| split_gw(&HeckeMatrix::single(e), &p).get(0, 0).clone();
        assert_eq!(one(HeckeElem::word(Word::S)), GwElem::new(LaurentPoly::zero(), lp(&[(0, 1)])));
        assert_eq!(one(HeckeElem::word(Word::T)), GwElem::new(LaurentPoly::zero(), lp(&[(-1, 1)])));
        let e = HeckeElem::from_terms(Basis::Group, [(Word::ONE, qi(1)), (Word::ST, qi(1))]);
        assert_eq!(one(e), GwElem::new(lp(&[(0, 1), (1, 1)]), LaurentPoly::zero()));
    }

    #[test]
    fn components_of_one_minus_st() {
        let rw = split_gw(&one_minus_st(), &Params::trivial());
        let comps = component_matrices(&rw, Region::new(Cmp::Lt, Cmp::Gt));
        assert_eq!(comps.a_plus, RatMatrix::from_rows(vec![vec![qi(0)]]).unwrap());
        assert_eq!(comps.a_minus, RatMatrix::from_rows(vec![vec![qi(2)]]).unwrap());
        let expect = LaurentMatrix::from_rows(vec![
            vec![lp(&[(0, 1), (1, -1)]), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), lp(&[(0, 1), (-1, -1)])],
        ])
        .unwrap();
        assert_eq!(comps.m_empty, expect);
    }

    #[test]
    fn components_of_idempotent_and_s() {
        let rw = split_gw(&HeckeMatrix::single(a_gen(Gen::S)), &Params::trivial());
        let comps = component_matrices(&rw, Region::new(Cmp::Lt, Cmp::Lt));
        assert_eq!(*comps.a_plus.get(0, 0), qi(1));
        let half = LaurentPoly::constant(q(1, 2));
        let expect = LaurentMatrix::from_rows(vec![vec![half.clone(), half.clone()], vec![half.clone(), half]]).unwrap();
        assert_eq!(comps.m_empty, expect);

        let rw = split_gw(&HeckeMatrix::single(HeckeElem::word(Word::S)), &Params::trivial());
        let comps = component_matrices(&rw, Region::new(Cmp::Gt, Cmp::Lt));
        assert_eq!(*comps.a_plus.get(0, 0), qi(-1));
    }

    #[test]
    fn boundary_components_are_flagged() {
        let rw = split_gw(&one_minus_st(), &Params::trivial());
        let comps = component_matrices(&rw, Region::new(Cmp::Eq, Cmp::Eq));
        assert!(!comps.plus_relevant && !comps.minus_relevant);
    }

    #[test]
    fn k_dims_examples() {
        let d = dims_of_k(&Params::from_ratios((1, 2), (1, 3)));
        assert_eq!((d.plus, d.minus, d.empty), (q(5, 12), q(1, 12), q(1, 2)));
        let d = dims_of_k(&Params::trivial());
        assert_eq!((d.plus, d.minus, d.empty), (qi(0), qi(0), qi(1)));
        let d = dims_of_k(&Params::from_ratios((2, 1), (2, 1)));
        assert_eq!((d.plus, d.minus, d.empty), (q(1, 3), qi(0), q(2, 3)));
    }

    #[test]
    fn dim_examples() {
        let p = Params::from_ratios((1, 2), (1, 3));
        let zero = HeckeMatrix::zeros(Basis::Group, 1, 1);
        let r = dim_ker_hecke(&zero, &p).unwrap();
        assert_eq!((r.dim.clone(), r.counts), (qi(1), Counts { a: 1, b: 1, c: 2 }));
        assert_eq!(r.cert, Cert::new(1, 0, 0));

        let r = dim_ker_hecke(&one_minus_st(), &p).unwrap();
        assert_eq!(r.dim, q(5, 12));
        assert_eq!(r.counts, Counts { a: 1, b: 0, c: 0 });
        assert_eq!(r.cert, Cert::new(-1, 1, 1));

        let r = dim_ker_hecke(&one_minus_st(), &Params::trivial()).unwrap();
        assert_eq!(r.dim, qi(0));
    }

    #[test]
    fn one_plus_st_is_k_minus() {
        let m = HeckeMatrix::single(HeckeElem::from_terms(
            Basis::Group,
            [(Word::ONE, qi(1)), (Word::ST, qi(1))],
        ));
        for p in [
            Params::from_ratios((1, 2), (1, 3)),
            Params::from_ratios((3, 1), (2, 1)),
            Params::from_ratios((1, 5), (4, 1)),
        ] {
            assert_eq!(dim_ker_hecke(&m, &p).unwrap().dim, dims_of_k(&p).minus);
        }
    }

    #[test]
    fn idempotent_a_s_in_every_stratum() {
        let m = HeckeMatrix::single(a_gen(Gen::S));
        for region in Region::all() {
            let p = region_samples(region)[0].clone();
            let r = dim_ker_hecke(&m, &p).unwrap();
            // kernel of right multiplication by a self-adjoint idempotent e is the image of 1 - e
            let oracle = Q::one() - inner_product(&a_gen(Gen::S), &HeckeElem::one(Basis::Group), &p);
            assert_eq!(r.dim, oracle, "{region}");
            assert_eq!(r.dim, &p.q_s / (Q::one() + &p.q_s));
        }
    }

    #[test]
    fn certificates() {
        let p = Params::from_ratios((1, 2), (1, 3));
        let k = dims_of_k(&p);
        assert_eq!(
            lambda_certificate(&k.plus, Counts { a: 1, b: 0, c: 0 }, &p).unwrap(),
            Cert::new(-1, 1, 1)
        );
        let p = Params::from_ratios((1, 3), (1, 2));
        let d = &p.q_s / (Q::one() + &p.q_s);
        assert_eq!(
            lambda_certificate(&d, Counts { a: 0, b: 0, c: 1 }, &p).unwrap(),
            Cert::new(1, -1, 0)
        );
        assert_eq!(
            lambda_certificate(&qi(1), Counts { a: 1, b: 1, c: 2 }, &p).unwrap(),
            Cert::new(1, 0, 0)
        );
        assert!(matches!(
            lambda_certificate(&qi(7), Counts { a: 1, b: 1, c: 2 }, &p),
            Err(Error::NotRepresentable { .. })
        ));
    }

    #[test]
    fn tau_matrix_params_must_match() {
        let m = HeckeMatrix::single(HeckeElem::tau(Word::S));
        let p = Params::from_ratios((2, 1), (3, 1));
        let rw = split_gw(&m, &p);
        assert!(dim_ker(&rw, &p).is_ok());
        assert!(matches!(
            dim_ker(&rw, &Params::trivial()),
            Err(Error::ParamsMismatch { .. })
        ));
    }

    #[test]
    fn piecewise_one_minus_st() {
        let pw = dim_piecewise(&one_minus_st()).unwrap();
        for piece in pw.open.iter().chain(&pw.boundary) {
            for p in &piece.samples {
                let expect = abs(&(Q::one() - &p.q_s * &p.q_t)) / p.c_norm();
                assert_eq!(pw.eval(p), expect);
            }
        }
        assert_eq!(pw.eval(&Params::from_ratios((1, 7), (7, 1))), qi(0));
        assert!(!pw.is_global());
        let on_curve = Params::from_ratios((1, 3), (3, 1));
        assert!(pw.continuous_at(&on_curve));
        let mut broken = pw.clone();
        broken.open[0].cert = Cert::new(0, 1, 1);
        assert!(!broken.continuous_at(&on_curve));
    }

    #[test]
    fn piecewise_idempotent_is_global() {
        let pw = dim_piecewise(&HeckeMatrix::single(a_gen(Gen::S))).unwrap();
        assert!(pw.is_global());
        assert_eq!(pw.open[0].cert, Cert::new(1, -1, 0));
        let counts: Vec<Counts> = pw.open.iter().map(|p| p.counts).collect();
        assert!(counts.windows(2).any(|w| w[0] != w[1]));
    }

    #[test]
    fn piecewise_zero_is_constant() {
        let pw = dim_piecewise(&HeckeMatrix::zeros(Basis::Group, 1, 1)).unwrap();
        for piece in &pw.open {
            assert_eq!(piece.cert, Cert::new(1, 0, 0));
        }
        // on boundary strata u = v or u + v = 1, so only the value is pinned down
        for piece in &pw.boundary {
            assert!(piece.samples.iter().all(|p| piece.cert.eval(p) == qi(1)));
        }
        assert!(matches!(
            dim_piecewise(&HeckeMatrix::single(HeckeElem::tau(Word::S))),
            Err(Error::PiecewiseNeedsGroupBasis)
        ));
    }

    #[test]
    fn region_samples_stay_in_region() {
        for region in Region::all() {
            let pool = region_samples(region);
            assert!(pool.len() >= if region.is_open() { 5 } else { 1 }, "{region}");
            assert!(pool.iter().all(|p| p.region() == region));
        }
    }
}
