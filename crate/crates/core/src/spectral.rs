//! Truncation checks of the `st`-eigenvector structure of `L^2_q W`.
//!
//! Everything here is computed on finite sections of the infinite series
//! `kappa(r_s, r_t) = sum_w r^w tau_w`. Each identity names the word-length
//! radius on which it is exact, and nothing outside that radius is compared.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::dihedral::{words_up_to, Gen, Params, Word};
use crate::hecke::{
    a_gen, convert_basis, hecke_mul, inner_product, kappa_norm_sq, kappa_partial_norm_sq,
    kappa_truncated, norm_sq, Basis, HeckeElem, KappaSign, KappaSpec,
};
use crate::kernel::dims_of_k;
use crate::rational::{fmt_q, q, qi, sqrt_exact, to_f64, Q};
use crate::Error;

/// Tolerance of the floating-point path.
pub const FLOAT_TOL: f64 = 1e-9;

/// `(sqrt q_s, sqrt q_t)` when both are rational.
pub fn sqrt_params(p: &Params) -> Option<(Q, Q)> {
    Some((sqrt_exact(&p.q_s)?, sqrt_exact(&p.q_t)?))
}

fn require_square(p: &Params) -> Result<(Q, Q), Error> {
    sqrt_params(p).ok_or_else(|| Error::NotSquare(p.to_string()))
}

fn half_pow(w: Word, roots: &(Q, Q)) -> Q {
    let (a, b) = w.letter_counts();
    num_traits::pow(roots.0.clone(), a as usize) * num_traits::pow(roots.1.clone(), b as usize)
}

#[derive(Clone, Debug, PartialEq)]
pub enum OpEntries {
    Exact(Vec<Q>),
    Float(Vec<f64>),
}

/// Right multiplication compressed to words of length at most `depth`, in the
/// orthonormal basis `q^{-w/2} tau_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    pub depth: u64,
    pub words: Vec<Word>,
    pub entries: OpEntries,
    /// Longest word in the support of the element, in the Hecke basis.
    pub reach: u64,
}

impl TruncatedOperator {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Rows of words up to this length lose no mass to truncation.
    pub fn interior_radius(&self) -> Option<u64> {
        self.depth.checked_sub(self.reach)
    }

    pub fn is_interior_row(&self, i: usize) -> bool {
        self.interior_radius().is_some_and(|r| self.words[i].len() <= r)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, OpEntries::Exact(_))
    }

    pub fn get_exact(&self, i: usize, j: usize) -> Option<&Q> {
        match &self.entries {
            OpEntries::Exact(v) => Some(&v[i * self.dim() + j]),
            OpEntries::Float(_) => None,
        }
    }

    pub fn get_f64(&self, i: usize, j: usize) -> f64 {
        match &self.entries {
            OpEntries::Exact(v) => to_f64(&v[i * self.dim() + j]),
            OpEntries::Float(v) => v[i * self.dim() + j],
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| match self.get_exact(i, j) {
                Some(x) => *x == if i == j { Q::one() } else { Q::zero() },
                None => (self.get_f64(i, j) - if i == j { 1.0 } else { 0.0 }).abs() < FLOAT_TOL,
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..i).all(|j| match (self.get_exact(i, j), self.get_exact(j, i)) {
                (Some(a), Some(b)) => a == b,
                _ => (self.get_f64(i, j) - self.get_f64(j, i)).abs() < FLOAT_TOL,
            })
        })
    }

    /// Interior rows are orthonormal (the rows of a unitary that lost nothing).
    pub fn interior_rows_orthonormal(&self) -> bool {
        let n = self.dim();
        let rows: Vec<usize> = (0..n).filter(|&i| self.is_interior_row(i)).collect();
        rows.iter().all(|&i| {
            rows.iter().all(|&k| {
                let expect = i == k;
                match self.entries {
                    OpEntries::Exact(_) => {
                        let dot: Q = (0..n)
                            .map(|j| self.get_exact(i, j).unwrap() * self.get_exact(k, j).unwrap())
                            .sum();
                        dot == if expect { Q::one() } else { Q::zero() }
                    }
                    OpEntries::Float(_) => {
                        let dot: f64 = (0..n).map(|j| self.get_f64(i, j) * self.get_f64(k, j)).sum();
                        (dot - if expect { 1.0 } else { 0.0 }).abs() < FLOAT_TOL
                    }
                }
            })
        })
    }
}

/// Matrix of `x -> x elem` on words of length at most `depth`. Row `u` holds the
/// image of `q^{-u/2} tau_u`; products that leave the truncation are dropped.
pub fn truncated_right_op(elem: &HeckeElem, depth: u64, p: &Params) -> TruncatedOperator {
    let x = convert_basis(elem, Basis::Tau, p);
    let words = words_up_to(depth.max(1));
    let n = words.len();
    let roots = sqrt_params(p);
    let mut exact = vec![Q::zero(); if roots.is_some() { n * n } else { 0 }];
    let mut float = vec![0.0; if roots.is_some() { 0 } else { n * n }];
    for (i, &u) in words.iter().enumerate() {
        let prod = hecke_mul(&HeckeElem::tau(u), &x, p).expect("same basis");
        for (j, &v) in words.iter().enumerate() {
            let c = prod.coeff(v);
            if c.is_zero() {
                continue;
            }
            match &roots {
                Some(r) => exact[i * n + j] = c * half_pow(v, r) / half_pow(u, r),
                None => {
                    let scale = (to_f64(&v.q_pow(p)) / to_f64(&u.q_pow(p))).sqrt();
                    float[i * n + j] = to_f64(&c) * scale;
                }
            }
        }
    }
    let entries = if roots.is_some() { OpEntries::Exact(exact) } else { OpEntries::Float(float) };
    TruncatedOperator { depth: depth.max(1), words, entries, reach: x.max_len() }
}

/// Squared residual of `kappa_trunc elem - eigen kappa_trunc` on the interior,
/// alongside the squared norm of `kappa_trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub residual_sq: Q,
    pub norm_sq: Q,
    pub interior_radius: u64,
}

impl Residual {
    pub fn ratio_sq(&self) -> Q {
        if self.norm_sq.is_zero() {
            Q::zero()
        } else {
            &self.residual_sq / &self.norm_sq
        }
    }

    pub fn ratio(&self) -> f64 {
        to_f64(&self.ratio_sq()).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.residual_sq.is_zero()
    }
}

/// Residual of `kappa_trunc x - eigen kappa_trunc` over words of length at most
/// `depth - |x|`, where `|x|` is the longest word of `x` in the Hecke basis.
pub fn element_residual(
    spec: &KappaSpec,
    x: &HeckeElem,
    eigen: &Q,
    depth: u64,
    p: &Params,
) -> Residual {
    let x = convert_basis(x, Basis::Tau, p);
    let radius = depth.saturating_sub(x.max_len());
    let k = kappa_truncated(spec, depth, p);
    let prod = hecke_mul(&k, &x, p).expect("same basis");
    let diff = &prod - &k.scale(eigen);
    Residual {
        residual_sq: norm_sq(&diff.restrict(radius), p),
        norm_sq: norm_sq(&k, p),
        interior_radius: radius,
    }
}

/// Residual of `(. st - lambda)` on `kappa_trunc`, exact on words of length at most `depth - 2`.
pub fn eigen_residual(spec: &KappaSpec, lambda: &Q, depth: u64, p: &Params) -> Residual {
    element_residual(spec, &HeckeElem::word(Word::ST), lambda, depth, p)
}

/// The values `mu` with `mu^2 = (1 - lambda) / 2` for `lambda = ±1`.
pub fn mu_from_lambda(lambda: i64) -> Vec<Q> {
    match lambda {
        1 => vec![Q::zero()],
        -1 => vec![qi(1), qi(-1)],
        _ => Vec::new(),
    }
}

/// `(. st)` and `(. (a_s - a_t))` have a vanishing interior residual on `spec`
/// for the same pairs `lambda <-> mu`.
pub fn lambda_mu_consistent(spec: &KappaSpec, depth: u64, p: &Params) -> bool {
    let diff = &a_gen(Gen::S) - &a_gen(Gen::T);
    [1i64, -1].into_iter().all(|lambda| {
        let st_zero = eigen_residual(spec, &qi(lambda), depth, p).is_zero();
        let mu_zero = mu_from_lambda(lambda)
            .iter()
            .any(|mu| element_residual(spec, &diff, mu, depth, p).is_zero());
        st_zero == mu_zero
    })
}

/// `x kappa` and `kappa x` both equal `(sum_w x_w q^w r^w) kappa` on words of
/// length at most `depth`.
pub fn scalar_action_check(spec: &KappaSpec, x: &HeckeElem, depth: u64, p: &Params) -> bool {
    let x = convert_basis(x, Basis::Tau, p);
    let reach = x.max_len();
    let k = kappa_truncated(spec, depth + reach, p);
    let scalar = kappa_scalar(spec, &x, p);
    let expect = kappa_truncated(spec, depth, p).scale(&scalar);
    let right = hecke_mul(&k, &x, p).expect("same basis").restrict(depth);
    let left = hecke_mul(&x, &k, p).expect("same basis").restrict(depth);
    right == expect && left == expect
}

/// `sum_w x_w q^w r^w`, the scalar by which `x` acts on `kappa`.
pub fn kappa_scalar(spec: &KappaSpec, x: &HeckeElem, p: &Params) -> Q {
    let x = convert_basis(x, Basis::Tau, p);
    x.terms().map(|(w, c)| c * w.q_pow(p) * spec.coeff(w)).sum()
}

/// Sign by which the generator acts on `kappa` from the left, read off the
/// truncated product; `None` when it is not an eigenvector.
pub fn generator_sign(g: Gen, spec: &KappaSpec, depth: u64, p: &Params) -> Option<i8> {
    let x = HeckeElem::word(g.word());
    let k = kappa_truncated(spec, depth + 1, p);
    let left = hecke_mul(&convert_basis(&x, Basis::Tau, p), &k, p).ok()?.restrict(depth);
    let k = k.restrict(depth);
    if left == k {
        Some(1)
    } else if left == -&k {
        Some(-1)
    } else {
        None
    }
}

/// `kappa_trunc(depth + extra) kappa_trunc(extra)` restricted to `depth` equals
/// `||kappa_trunc(extra)||^2 kappa_trunc(depth)`.
pub fn idempotent_check(spec: &KappaSpec, depth: u64, extra: u64, p: &Params) -> bool {
    let big = kappa_truncated(spec, depth + extra, p);
    let small = kappa_truncated(spec, extra, p);
    let prod = hecke_mul(&big, &small, p).expect("same basis").restrict(depth);
    let expect = kappa_truncated(spec, depth, p).scale(&kappa_partial_norm_sq(spec, extra, p));
    prod == expect
}

/// Norm bound for right multiplication by `y` on `kappa`: the truncated product
/// is a multiple `c kappa` on the interior and `c^2 <= ||kappa||^2 ||y||^2`,
/// so `||kappa y|| <= ||kappa||^2 ||y||`.
pub fn boundedness_check(spec: &KappaSpec, y: &HeckeElem, depth: u64, p: &Params) -> Result<bool, Error> {
    let y = convert_basis(y, Basis::Tau, p);
    let k_norm = kappa_norm_sq(spec, p)?;
    let k = kappa_truncated(spec, depth + y.max_len(), p);
    let c = kappa_scalar(spec, &y, p);
    let prod = hecke_mul(&k, &y, p)?.restrict(depth);
    let shape_ok = prod == kappa_truncated(spec, depth, p).scale(&c);
    Ok(shape_ok && &c * &c <= k_norm * norm_sq(&y, p))
}

type Mat2 = [[Q; 2]; 2];

fn mat_vec(m: &Mat2, v: &[Q; 2]) -> [Q; 2] {
    [
        &m[0][0] * &v[0] + &m[0][1] * &v[1],
        &m[1][0] * &v[0] + &m[1][1] * &v[1],
    ]
}

fn det(m: &Mat2) -> Q {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn trace(m: &Mat2) -> Q {
    &m[0][0] + &m[1][1]
}

fn norm2(v: &[Q; 2]) -> Q {
    &v[0] * &v[0] + &v[1] * &v[1]
}

/// Quantities of the coefficient recurrence for an `(a_s - a_t)`-eigenvector
/// with eigenvalue `mu`, at square-rational parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceData {
    pub mu: Q,
    /// `1 - 2 mu^2`.
    pub lambda: Q,
    pub alpha_s: Q,
    pub alpha_t: Q,
    pub alpha_st: Q,
    pub delta: Q,
    pub beta: Q,
    pub gamma: Q,
    pub m_rec: Mat2,
    pub n_rec: Mat2,
    /// `(chi_1, chi_2)` with `|chi_1| >= |chi_2|`, when the eigenvalues are rational.
    pub chi: Option<(Q, Q)>,
}

impl RecurrenceData {
    pub fn trace(&self) -> Q {
        &self.beta * &self.gamma + &self.delta + self.delta.recip()
    }

    /// `chi^2 - tr chi + 1`.
    pub fn characteristic(&self, chi: &Q) -> Q {
        chi * chi - self.trace() * chi + Q::one()
    }

    /// Initial equation in the form multiplied through by `beta gamma`:
    /// `gamma (chi - 1/delta)/alpha_s - beta (chi - delta)/alpha_t - beta gamma (mu - u + v)`.
    pub fn initial_cleared(&self, chi: &Q, p: &Params) -> Q {
        let (u, v) = p.lambda_gens();
        &self.gamma * (chi - self.delta.recip()) / &self.alpha_s
            - &self.beta * (chi - &self.delta) / &self.alpha_t
            - &self.beta * &self.gamma * (&self.mu - u + v)
    }

    /// `x_s/alpha_s - x_t/alpha_t - (mu - u + v)` with
    /// `x_s = (chi - 1/delta)/beta`, `x_t = (chi - delta)/gamma`; `None` if `beta gamma = 0`.
    pub fn initial_direct(&self, chi: &Q, p: &Params) -> Option<Q> {
        if self.beta.is_zero() || self.gamma.is_zero() {
            return None;
        }
        let (u, v) = p.lambda_gens();
        let xs = (chi - self.delta.recip()) / &self.beta;
        let xt = (chi - &self.delta) / &self.gamma;
        Some(xs / &self.alpha_s - xt / &self.alpha_t - (&self.mu - u + v))
    }

    /// An eigenvector of `m_rec` for `chi`.
    pub fn eigenvector(&self, chi: &Q) -> [Q; 2] {
        let m = &self.m_rec;
        if !m[0][1].is_zero() {
            [m[0][1].clone(), chi - &m[0][0]]
        } else if !m[1][0].is_zero() {
            [chi - &m[1][1], m[1][0].clone()]
        } else if *chi == m[0][0] {
            [Q::one(), Q::zero()]
        } else {
            [Q::zero(), Q::one()]
        }
    }
}

pub fn recurrence_data(p: &Params, mu: &Q) -> Result<RecurrenceData, Error> {
    let (rs, rt) = require_square(p)?;
    let alpha_s = &rs + rs.recip();
    let alpha_t = &rt + rt.recip();
    let rst = &rs * &rt;
    let alpha_st = &rst - rst.recip();
    let delta = &alpha_s / &alpha_t;
    let beta = &alpha_st / &alpha_s - &alpha_t * mu;
    let gamma = &alpha_st / &alpha_t + &alpha_s * mu;
    let di = delta.recip();
    let bg = &beta * &gamma;
    let m_rec = [[di.clone(), beta.clone()], [&gamma * &di, &bg + &delta]];
    let n_rec = [[delta.clone(), gamma.clone()], [&beta * &delta, &bg + &di]];
    let tr = &bg + &delta + &di;
    let chi = sqrt_exact(&(&tr * &tr - qi(4))).map(|root| {
        let a = (&tr + &root) / qi(2);
        let b = (&tr - &root) / qi(2);
        if a.abs() >= b.abs() { (a, b) } else { (b, a) }
    });
    Ok(RecurrenceData {
        mu: mu.clone(),
        lambda: Q::one() - qi(2) * mu * mu,
        alpha_s,
        alpha_t,
        alpha_st,
        delta,
        beta,
        gamma,
        m_rec,
        n_rec,
        chi,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub data: RecurrenceData,
    pub det_m_one: bool,
    pub det_n_one: bool,
    pub traces_agree: bool,
}

impl RecurrenceReport {
    pub fn passed(&self) -> bool {
        self.det_m_one && self.det_n_one && self.traces_agree
    }
}

/// Determinants equal `1` and both traces equal `beta gamma + delta + 1/delta`.
pub fn recurrence_check(p: &Params, mu: &Q) -> Result<RecurrenceReport, Error> {
    let data = recurrence_data(p, mu)?;
    let tr = data.trace();
    Ok(RecurrenceReport {
        det_m_one: det(&data.m_rec).is_one(),
        det_n_one: det(&data.n_rec).is_one(),
        traces_agree: trace(&data.m_rec) == tr && trace(&data.n_rec) == tr,
        data,
    })
}

/// One of the four closed-form solutions `(chi_2, mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCheck {
    pub chi2: Q,
    pub mu: Q,
    pub characteristic_zero: bool,
    pub initial_cleared_zero: bool,
    /// `None` when `beta gamma = 0` and only the cleared form is meaningful.
    pub initial_direct_zero: Option<bool>,
}

impl SolutionCheck {
    pub fn passed(&self) -> bool {
        self.characteristic_zero && self.initial_cleared_zero && self.initial_direct_zero != Some(false)
    }
}

/// `(sqrt(q_s q_t), 0)`, `(1/sqrt(q_s q_t), 0)`, `(-sqrt(q_s/q_t), 1)`, `(-sqrt(q_t/q_s), -1)`.
pub fn solution_pairs(p: &Params) -> Result<Vec<(Q, Q)>, Error> {
    let (rs, rt) = require_square(p)?;
    let r = &rs * &rt;
    Ok(vec![
        (r.clone(), Q::zero()),
        (r.recip(), Q::zero()),
        (-(&rs / &rt), qi(1)),
        (-(&rt / &rs), qi(-1)),
    ])
}

pub fn case_two_solutions(p: &Params) -> Result<Vec<SolutionCheck>, Error> {
    solution_pairs(p)?
        .into_iter()
        .map(|(chi2, mu)| {
            let data = recurrence_data(p, &mu)?;
            Ok(SolutionCheck {
                characteristic_zero: data.characteristic(&chi2).is_zero(),
                initial_cleared_zero: data.initial_cleared(&chi2, p).is_zero(),
                initial_direct_zero: data.initial_direct(&chi2, p).map(|x| x.is_zero()),
                chi2,
                mu,
            })
        })
        .collect()
}

/// Iterates `m` fifty times on `v`; true when the result keeps at least half of
/// the starting norm.
pub fn fails_to_decay(m: &Mat2, v: &[Q; 2]) -> bool {
    let start = norm2(v);
    let mut x = v.clone();
    for _ in 0..DIVERGENCE_STEPS {
        x = mat_vec(m, &x);
    }
    norm2(&x) * qi(4) >= start
}

pub const DIVERGENCE_STEPS: usize = 50;

/// True when `M_rec^n m` fails to decay for the `chi_1`-eigenvector (if rational)
/// and for `trials` random starting vectors off the `chi_2`-line.
pub fn divergence_check<R: Rng>(p: &Params, mu: &Q, trials: usize, rng: &mut R) -> Result<bool, Error> {
    let data = recurrence_data(p, mu)?;
    let mut starts = Vec::new();
    if let Some((chi1, _)) = &data.chi {
        starts.push(data.eigenvector(chi1));
    }
    while starts.len() < trials + usize::from(data.chi.is_some()) {
        let v = [qi(rng.gen_range(-5..=5)), qi(rng.gen_range(-5..=5))];
        if norm2(&v).is_zero() {
            continue;
        }
        if let Some((chi1, chi2)) = &data.chi {
            let mv = mat_vec(&data.m_rec, &v);
            if chi1 != chi2 && mv == [chi2 * &v[0], chi2 * &v[1]] {
                continue;
            }
        }
        starts.push(v);
    }
    Ok(starts.iter().all(|v| fails_to_decay(&data.m_rec, v)))
}

/// Parameters and `mu` at which `M_rec` has the repeated eigenvalue `1` and is not diagonalizable.
pub fn jordan_case() -> (Params, Q) {
    (Params::from_ratios((1, 4), (1, 4)), q(-3, 5))
}

/// `(q_s + q_t + 2)(2 q_s q_t + q_s + q_t)`, the obstruction polynomial of the
/// first case; positive for positive parameters.
pub fn case_one_polynomial(p: &Params) -> Q {
    (&p.q_s + &p.q_t + qi(2)) * (qi(2) * &p.q_s * &p.q_t + &p.q_s + &p.q_t)
}

/// Floating-point scan of real `mu` in `[-0.9, 0.9]` away from `0`: either the
/// recurrence has no decaying direction (`|chi| = 1`) or its decaying solution
/// misses the initial equation by a positive margin.
#[derive(Clone, Debug, PartialEq)]
pub struct MuScan {
    pub samples: usize,
    pub oscillating: usize,
    pub decaying: usize,
    pub min_initial_residual: f64,
}

impl MuScan {
    pub fn excluded(&self) -> bool {
        self.decaying == 0 || self.min_initial_residual > 1e-3
    }
}

pub fn scan_real_mu(q_s: f64, q_t: f64, samples: usize) -> MuScan {
    let (rs, rt) = (q_s.sqrt(), q_t.sqrt());
    let a_s = rs + 1.0 / rs;
    let a_t = rt + 1.0 / rt;
    let a_st = rs * rt - 1.0 / (rs * rt);
    let d = a_s / a_t;
    let rhs_shift = -1.0 / (1.0 + q_s) + 1.0 / (1.0 + q_t);
    let mut out = MuScan { samples: 0, oscillating: 0, decaying: 0, min_initial_residual: f64::INFINITY };
    for i in 0..=samples {
        let mu = -0.9 + 1.8 * i as f64 / samples as f64;
        let b = a_st / a_s - a_t * mu;
        let g = a_st / a_t + a_s * mu;
        if mu.abs() < 0.05 || b.abs() < 1e-6 || g.abs() < 1e-6 {
            continue;
        }
        out.samples += 1;
        let tr = b * g + d + 1.0 / d;
        let disc = tr * tr - 4.0;
        if disc <= FLOAT_TOL {
            out.oscillating += 1;
            continue;
        }
        out.decaying += 1;
        let chi = (tr - tr.signum() * disc.sqrt()) / 2.0;
        let xs = (chi - 1.0 / d) / b;
        let xt = (chi - d) / g;
        let r = (xs / a_s - xt / a_t - (mu + rhs_shift)).abs();
        out.min_initial_residual = out.min_initial_residual.min(r);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// `<s kappa_empty, 1>_q`, where `kappa_empty` is the projection of `1` to `K_empty`.
    pub s_pairing: Q,
    pub t_pairing: Q,
    pub dims_sum: Q,
    /// `(N, |<kappa+_N, kappa-_N>_q|)` for `N = 4..=depth`; empty on a boundary.
    pub partial: Vec<(u64, Q)>,
}

impl OrthogonalityReport {
    /// Magnitudes never increase with `N` and end below where they started.
    pub fn monotone(&self) -> bool {
        let n = self.partial.len();
        self.partial.windows(2).all(|w| w[1].1 <= w[0].1)
            && (n < 2 || self.partial[n - 1].1 < self.partial[0].1)
    }

    pub fn last_magnitude(&self) -> Option<&Q> {
        self.partial.last().map(|(_, x)| x)
    }

    pub fn exact_identities_hold(&self) -> bool {
        self.s_pairing.is_zero() && self.t_pairing.is_zero() && self.dims_sum.is_one()
    }
}

pub fn orthogonality_check(p: &Params, depth: u64) -> OrthogonalityReport {
    let k = dims_of_k(p);
    let plus = KappaSpec::plus(p);
    let minus = KappaSpec::minus(p);
    let one = HeckeElem::one(Basis::Group);
    let pairing = |g: Gen| {
        // s and t act on kappa± by a sign; <g pr(1), 1> = sign dim K for each summand
        let sign_of = |spec: &Option<KappaSpec>| {
            spec.as_ref().map_or(0, |s| generator_sign(g, s, 4, p).expect("kappa is a generator eigenvector"))
        };
        inner_product(&HeckeElem::word(g.word()), &one, p)
            - qi(sign_of(&plus) as i64) * &k.plus
            - qi(sign_of(&minus) as i64) * &k.minus
    };
    let partial = match (&plus, &minus) {
        (Some(a), Some(b)) => (4..=depth.max(4))
            .map(|n| {
                let x = inner_product(&kappa_truncated(a, n, p), &kappa_truncated(b, n, p), p);
                (n, x.abs())
            })
            .collect(),
        _ => Vec::new(),
    };
    OrthogonalityReport {
        s_pairing: pairing(Gen::S),
        t_pairing: pairing(Gen::T),
        dims_sum: &k.plus + &k.minus + &k.empty,
        partial,
    }
}

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// Default parameter grid: squares of rationals, five points per open region
/// and six on the boundary curves.
pub fn square_grid() -> Vec<Params> {
    let pts: [((i64, i64), (i64, i64)); 26] = [
        ((1, 4), (4, 9)), ((1, 9), (1, 4)), ((1, 4), (1, 1)), ((4, 9), (9, 16)), ((1, 16), (4, 1)),
        ((4, 9), (1, 4)), ((1, 4), (1, 9)), ((1, 1), (1, 4)), ((9, 16), (4, 9)), ((4, 1), (1, 16)),
        ((9, 4), (4, 1)), ((4, 1), (9, 1)), ((1, 1), (4, 1)), ((16, 9), (9, 4)), ((1, 4), (16, 1)),
        ((4, 1), (9, 4)), ((9, 1), (4, 1)), ((4, 1), (1, 1)), ((9, 4), (16, 9)), ((16, 1), (1, 4)),
        ((1, 4), (4, 1)), ((4, 1), (1, 4)), ((1, 4), (1, 4)), ((4, 1), (4, 1)), ((1, 1), (1, 1)),
        ((9, 4), (4, 9)),
    ];
    pts.iter().map(|&(a, b)| Params::from_ratios(a, b)).collect()
}

/// Runs the truncation checks at every grid point.
pub fn verify_grid(grid: &[Params], depth: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for p in grid {
        out.extend(verify_point(p, depth));
    }
    out
}

pub fn verify_point(p: &Params, depth: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let depth = depth.max(4);
    let exact = sqrt_params(p).is_some();
    for sign in [KappaSign::Plus, KappaSign::Minus] {
        let Some(spec) = KappaSpec::select(sign, p) else { continue };
        let tag = match sign {
            KappaSign::Plus => "kappa+",
            KappaSign::Minus => "kappa-",
        };
        let lambda = qi(sign.eigenvalue());
        let right = eigen_residual(&spec, &lambda, depth, p);
        let wrong = eigen_residual(&spec, &-&lambda, depth, p);
        out.push(Check::new(
            format!("{tag} eigen residual at {p}"),
            right.is_zero() && wrong.ratio_sq() >= q(1, 4),
            format!("correct {}, wrong sign ratio {:.4}", fmt_q(&right.ratio_sq()), wrong.ratio()),
        ));
        out.push(Check::new(
            format!("{tag} idempotent at {p}"),
            idempotent_check(&spec, depth / 2, depth / 2, p),
            "interior exact",
        ));
        let x = &HeckeElem::tau(Word::S) + &HeckeElem::tau(Word::new(1, true)).scale(&q(-1, 2));
        out.push(Check::new(
            format!("{tag} scalar action at {p}"),
            scalar_action_check(&spec, &x, depth / 2, p)
                && boundedness_check(&spec, &x, depth / 2, p).unwrap_or(false),
            "left and right, with norm bound",
        ));
        out.push(Check::new(
            format!("{tag} lambda/mu at {p}"),
            lambda_mu_consistent(&spec, depth, p),
            "a_s - a_t residual vanishes with the st residual",
        ));
    }
    let op = truncated_right_op(&HeckeElem::word(Word::ST), depth, p);
    out.push(Check::new(
        format!("st unitary at {p}"),
        op.interior_rows_orthonormal(),
        if exact { "exact" } else { "float" },
    ));
    let ts = truncated_right_op(&HeckeElem::tau(Word::S), depth, p);
    out.push(Check::new(format!("T_s symmetric at {p}"), ts.is_symmetric(), if exact { "exact" } else { "float" }));
    let orth = orthogonality_check(p, depth);
    out.push(Check::new(
        format!("orthogonality at {p}"),
        orth.exact_identities_hold() && orth.monotone(),
        format!(
            "<s k0,1> = {}, <t k0,1> = {}, final |<k+,k->| = {}",
            fmt_q(&orth.s_pairing),
            fmt_q(&orth.t_pairing),
            orth.last_magnitude().map_or("n/a".into(), |x| format!("{:.3e}", to_f64(x)))
        ),
    ));
    out.push(Check::new(
        format!("case-one polynomial at {p}"),
        case_one_polynomial(p) > Q::zero(),
        "positive",
    ));
    if exact {
        for mu in [qi(0), qi(1), qi(-1)] {
            let r = recurrence_check(p, &mu).expect("square parameters");
            out.push(Check::new(
                format!("recurrence mu={} at {p}", fmt_q(&mu)),
                r.passed(),
                "det 1, equal traces",
            ));
        }
        let sols = case_two_solutions(p).expect("square parameters");
        out.push(Check::new(
            format!("closed-form solutions at {p}"),
            sols.iter().all(SolutionCheck::passed),
            "characteristic and initial equations",
        ));
    }
    let scan = scan_real_mu(to_f64(&p.q_s), to_f64(&p.q_t), 180);
    out.push(Check::new(
        format!("other real mu excluded at {p}"),
        scan.excluded(),
        format!("{} decaying samples, min residual {:.4}", scan.decaying, scan.min_initial_residual),
    ));
    out
}
