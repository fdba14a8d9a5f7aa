//! Finite elements of the group algebra `RW`, written either in the group basis
//! `{w}` or in the Hecke basis `{tau_w}` (which depends on the parameters).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::dihedral::{words_up_to, Gen, Params, Word};
use crate::rational::{fmt_q, qi, Q};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Group,
    Tau,
}

/// A finite linear combination of basis vectors; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElem {
    basis: Basis,
    coeffs: BTreeMap<Word, Q>,
}

impl HeckeElem {
    pub fn zero(basis: Basis) -> Self {
        HeckeElem { basis, coeffs: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::term(basis, Word::ONE, Q::one())
    }

    pub fn term(basis: Basis, w: Word, c: Q) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(w, c);
        e
    }

    /// The group element `w`.
    pub fn word(w: Word) -> Self {
        Self::term(Basis::Group, w, Q::one())
    }

    /// The Hecke basis vector `tau_w`.
    pub fn tau(w: Word) -> Self {
        Self::term(Basis::Tau, w, Q::one())
    }

    pub fn scalar(basis: Basis, c: Q) -> Self {
        Self::term(basis, Word::ONE, c)
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Word, Q)>) -> Self {
        let mut e = Self::zero(basis);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: Word) -> Q {
        self.coeffs.get(&w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Word, &Q)> {
        self.coeffs.iter().map(|(w, c)| (*w, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest word length in the support (0 for the zero element).
    pub fn max_len(&self) -> u64 {
        self.coeffs.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(w).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        HeckeElem {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(w, x)| (*w, x * c)).collect(),
        }
    }

    /// Keeps only the words of length at most `radius`.
    pub fn restrict(&self, radius: u64) -> Self {
        HeckeElem {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() <= radius)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// `w -> w^{-1}` on either basis.
    pub fn adjoint(&self) -> Self {
        HeckeElem {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(w, c)| (w.inverse(), c.clone())).collect(),
        }
    }

    /// Product in the basis both operands share.
    pub fn mul(&self, other: &Self, p: &Params) -> Result<Self, Error> {
        match self.basis {
            Basis::Group => group_mul(self, other),
            Basis::Tau => hecke_mul(self, other, p),
        }
    }

    pub fn to_basis(&self, target: Basis, p: &Params) -> Self {
        convert_basis(self, target, p)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.basis, other.basis,
            "mixed-basis arithmetic; convert one operand first"
        );
    }
}

impl Add for &HeckeElem {
    type Output = HeckeElem;

    fn add(self, rhs: &HeckeElem) -> HeckeElem {
        self.check_same(rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.coeffs {
            out.add_term(*w, c.clone());
        }
        out
    }
}

impl Sub for &HeckeElem {
    type Output = HeckeElem;

    fn sub(self, rhs: &HeckeElem) -> HeckeElem {
        self + &(-rhs)
    }
}

impl Neg for &HeckeElem {
    type Output = HeckeElem;

    fn neg(self) -> HeckeElem {
        HeckeElem {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }
}

impl fmt::Display for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let name = match (self.basis, w.is_one()) {
                (_, true) => String::new(),
                (Basis::Group, false) => w.to_string(),
                (Basis::Tau, false) => format!("T[{w}]"),
            };
            match (a.is_one(), name.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{name}")?,
                (false, true) => write!(f, "{}", fmt_q(&a))?,
                (false, false) => write!(f, "{}*{name}", fmt_q(&a))?,
            }
        }
        Ok(())
    }
}

fn require(x: &HeckeElem, basis: Basis) -> Result<(), Error> {
    if x.basis != basis {
        return Err(Error::BasisMismatch { expected: basis, found: x.basis });
    }
    Ok(())
}

/// `tau_g tau_w`.
fn tau_gen_left(g: Gen, w: Word, c: &Q, p: &Params, out: &mut BTreeMap<Word, Q>) {
    let gw = g.word().mul(w);
    let mut push = |w: Word, x: Q| {
        let slot = out.entry(w).or_insert_with(Q::zero);
        *slot += x;
    };
    if gw.len() > w.len() {
        push(gw, c.clone());
    } else {
        let qg = p.get(g);
        push(w, c * (qg - Q::one()));
        push(gw, c * qg);
    }
}

/// `tau_u tau_v`, expanded by peeling letters off the right end of `u`.
fn tau_words(u: Word, v: Word, p: &Params) -> BTreeMap<Word, Q> {
    let mut acc: BTreeMap<Word, Q> = BTreeMap::from([(v, Q::one())]);
    for g in u.letters().into_iter().rev() {
        let mut next = BTreeMap::new();
        for (w, c) in &acc {
            if !c.is_zero() {
                tau_gen_left(g, *w, c, p, &mut next);
            }
        }
        acc = next;
    }
    acc
}

/// Product in the Hecke basis, bilinear in the generator rules
/// `tau_s tau_w = tau_sw` when `|sw| > |w|`, else `(q_s - 1) tau_w + q_s tau_sw`.
pub fn hecke_mul(x: &HeckeElem, y: &HeckeElem, p: &Params) -> Result<HeckeElem, Error> {
    require(x, Basis::Tau)?;
    require(y, Basis::Tau)?;
    let mut out = HeckeElem::zero(Basis::Tau);
    for (u, cu) in &x.coeffs {
        for (v, cv) in &y.coeffs {
            let c = cu * cv;
            for (w, d) in tau_words(*u, *v, p) {
                out.add_term(w, &c * d);
            }
        }
    }
    Ok(out)
}

/// Ordinary group-ring convolution.
pub fn group_mul(x: &HeckeElem, y: &HeckeElem) -> Result<HeckeElem, Error> {
    require(x, Basis::Group)?;
    require(y, Basis::Group)?;
    let mut out = HeckeElem::zero(Basis::Group);
    for (u, cu) in &x.coeffs {
        for (v, cv) in &y.coeffs {
            out.add_term(u.mul(*v), cu * cv);
        }
    }
    Ok(out)
}

/// `g = (1 - q_g)/(1 + q_g) + 2/(1 + q_g) tau_g`.
pub fn gen_in_tau(g: Gen, p: &Params) -> HeckeElem {
    let qg = p.get(g);
    let den = Q::one() + qg;
    HeckeElem::from_terms(
        Basis::Tau,
        [
            (Word::ONE, (Q::one() - qg) / &den),
            (g.word(), qi(2) / &den),
        ],
    )
}

/// `tau_g = (q_g - 1)/2 + (q_g + 1)/2 g`.
pub fn tau_gen_in_group(g: Gen, p: &Params) -> HeckeElem {
    let qg = p.get(g);
    HeckeElem::from_terms(
        Basis::Group,
        [
            (Word::ONE, (qg - Q::one()) / qi(2)),
            (g.word(), (qg + Q::one()) / qi(2)),
        ],
    )
}

/// Rewrites `x` in the `target` basis through the isomorphism on generators.
pub fn convert_basis(x: &HeckeElem, target: Basis, p: &Params) -> HeckeElem {
    if x.basis == target {
        return x.clone();
    }
    let gens = [Gen::S, Gen::T].map(|g| match target {
        Basis::Tau => gen_in_tau(g, p),
        Basis::Group => tau_gen_in_group(g, p),
    });
    let image = |w: Word| {
        w.letters().into_iter().fold(HeckeElem::one(target), |acc, g| {
            acc.mul(&gens[g as usize], p).expect("same basis")
        })
    };
    let mut out = HeckeElem::zero(target);
    for (w, c) in &x.coeffs {
        for (v, d) in image(*w).coeffs {
            out.add_term(v, c * d);
        }
    }
    out
}

/// `<x, y>_q = sum_w x_w y_w q^w` over Hecke-basis coefficients.
pub fn inner_product(x: &HeckeElem, y: &HeckeElem, p: &Params) -> Q {
    let x = convert_basis(x, Basis::Tau, p);
    let y = convert_basis(y, Basis::Tau, p);
    let mut acc = Q::zero();
    for (w, c) in &x.coeffs {
        if let Some(d) = y.coeffs.get(w) {
            acc += c * d * w.q_pow(p);
        }
    }
    acc
}

pub fn norm_sq(x: &HeckeElem, p: &Params) -> Q {
    inner_product(x, x, p)
}

pub fn adjoint(x: &HeckeElem) -> HeckeElem {
    x.adjoint()
}

/// `a_g = (1 + g)/2`.
pub fn a_gen(g: Gen) -> HeckeElem {
    let half = Q::new(1.into(), 2.into());
    HeckeElem::from_terms(Basis::Group, [(Word::ONE, half.clone()), (g.word(), half)])
}

/// `h_g = (1 - g)/2`.
pub fn h_gen(g: Gen) -> HeckeElem {
    let half = Q::new(1.into(), 2.into());
    HeckeElem::from_terms(Basis::Group, [(Word::ONE, half.clone()), (g.word(), -half)])
}

/// Coefficient pair `(r_s, r_t)` of the series `kappa = sum_w r^w tau_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaSpec {
    pub r_s: Q,
    pub r_t: Q,
}

/// Which of the two `st`-eigenvectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaSign {
    /// Eigenvalue `+1`.
    Plus,
    /// Eigenvalue `-1`.
    Minus,
}

impl KappaSign {
    pub fn eigenvalue(self) -> i64 {
        match self {
            KappaSign::Plus => 1,
            KappaSign::Minus => -1,
        }
    }
}

impl KappaSpec {
    pub fn new(r_s: Q, r_t: Q) -> Self {
        KappaSpec { r_s, r_t }
    }

    /// `kappa_+`: `(1, 1)` below `q_s q_t = 1`, `(-1/q_s, -1/q_t)` above, `None` on the curve.
    pub fn plus(p: &Params) -> Option<Self> {
        match p.sign_plus() {
            1 => Some(KappaSpec::new(Q::one(), Q::one())),
            -1 => Some(KappaSpec::new(-p.q_s.recip(), -p.q_t.recip())),
            _ => None,
        }
    }

    /// `kappa_-`: `(1, -1/q_t)` when `q_s < q_t`, `(-1/q_s, 1)` when `q_s > q_t`, `None` when equal.
    pub fn minus(p: &Params) -> Option<Self> {
        match p.sign_minus() {
            1 => Some(KappaSpec::new(Q::one(), -p.q_t.recip())),
            -1 => Some(KappaSpec::new(-p.q_s.recip(), Q::one())),
            _ => None,
        }
    }

    pub fn select(sign: KappaSign, p: &Params) -> Option<Self> {
        match sign {
            KappaSign::Plus => Self::plus(p),
            KappaSign::Minus => Self::minus(p),
        }
    }

    pub fn coeff(&self, w: Word) -> Q {
        w.weight(&self.r_s, &self.r_t)
    }

    /// `(r_s r_t)^2 q_s q_t`; the series is square-summable iff this is below 1.
    pub fn decay_ratio(&self, p: &Params) -> Q {
        let r = &self.r_s * &self.r_t;
        &r * &r * &p.q_s * &p.q_t
    }
}

/// Partial sum of `kappa` over all words of length at most `depth`.
pub fn kappa_truncated(spec: &KappaSpec, depth: u64, _p: &Params) -> HeckeElem {
    HeckeElem::from_terms(
        Basis::Tau,
        words_up_to(depth).into_iter().map(|w| (w, spec.coeff(w))),
    )
}

/// Truncated `kappa_+` or `kappa_-`, or zero where that vector vanishes.
pub fn kappa_sel_truncated(sign: KappaSign, depth: u64, p: &Params) -> HeckeElem {
    match KappaSpec::select(sign, p) {
        Some(spec) => kappa_truncated(&spec, depth, p),
        None => HeckeElem::zero(Basis::Tau),
    }
}

/// `||kappa||^2 = (1 + r_s^2 q_s)(1 + r_t^2 q_t) / (1 - r_s^2 r_t^2 q_s q_t)`.
pub fn kappa_norm_sq(spec: &KappaSpec, p: &Params) -> Result<Q, Error> {
    let ratio = spec.decay_ratio(p);
    if ratio >= Q::one() {
        return Err(Error::Divergent(fmt_q(&ratio)));
    }
    let num = (Q::one() + &spec.r_s * &spec.r_s * &p.q_s)
        * (Q::one() + &spec.r_t * &spec.r_t * &p.q_t);
    Ok(num / (Q::one() - ratio))
}

/// `sum_{|w| <= depth} (r^w)^2 q^w`.
pub fn kappa_partial_norm_sq(spec: &KappaSpec, depth: u64, p: &Params) -> Q {
    words_up_to(depth)
        .into_iter()
        .map(|w| {
            let c = spec.coeff(w);
            &c * &c * w.q_pow(p)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p23() -> Params {
        Params::from_ratios((2, 1), (3, 1))
    }

    #[test]
    fn tau_products() {
        let p = Params::from_ratios((2, 1), (1, 1));
        let ts = HeckeElem::tau(Word::S);
        let tt = HeckeElem::tau(Word::T);
        let ss = hecke_mul(&ts, &ts, &p).unwrap();
        assert_eq!(
            ss,
            HeckeElem::from_terms(Basis::Tau, [(Word::S, qi(1)), (Word::ONE, qi(2))])
        );
        assert_eq!(hecke_mul(&ts, &tt, &p).unwrap(), HeckeElem::tau(Word::ST));

        let p = Params::from_ratios((1, 1), (3, 1));
        let r = hecke_mul(&HeckeElem::tau(Word::ST), &tt, &p).unwrap();
        assert_eq!(
            r,
            HeckeElem::from_terms(Basis::Tau, [(Word::ST, qi(2)), (Word::S, qi(3))])
        );
    }

    #[test]
    fn basis_mismatch_rejected() {
        let p = p23();
        let g = HeckeElem::word(Word::S);
        let t = HeckeElem::tau(Word::S);
        assert!(matches!(hecke_mul(&g, &t, &p), Err(Error::BasisMismatch { .. })));
        assert!(group_mul(&g, &t).is_err());
    }

    #[test]
    fn group_products() {
        let s = HeckeElem::word(Word::S);
        let t = HeckeElem::word(Word::T);
        let one = HeckeElem::one(Basis::Group);
        assert_eq!(group_mul(&s, &s).unwrap(), one);
        let plus = &one + &s;
        let minus = &one - &s;
        assert!(group_mul(&plus, &minus).unwrap().is_zero());
        assert_eq!(group_mul(&HeckeElem::word(Word::ST), &t).unwrap(), s);
    }

    #[test]
    fn conversions() {
        let p = Params::from_ratios((3, 1), (1, 1));
        let s_tau = convert_basis(&HeckeElem::word(Word::S), Basis::Tau, &p);
        assert_eq!(
            s_tau,
            HeckeElem::from_terms(Basis::Tau, [(Word::ONE, q(-1, 2)), (Word::S, q(1, 2))])
        );
        let ts_group = convert_basis(&HeckeElem::tau(Word::S), Basis::Group, &p);
        assert_eq!(
            ts_group,
            HeckeElem::from_terms(Basis::Group, [(Word::ONE, qi(1)), (Word::S, qi(2))])
        );
        let x = HeckeElem::from_terms(
            Basis::Group,
            [(Word::S, qi(1)), (Word::T, qi(2)), (Word::ST, qi(1))],
        );
        let p = Params::from_ratios((2, 7), (5, 3));
        assert_eq!(convert_basis(&convert_basis(&x, Basis::Tau, &p), Basis::Group, &p), x);
    }

    #[test]
    fn inner_products() {
        let p = Params::from_ratios((1, 2), (1, 3));
        let tst = HeckeElem::tau(Word::ST);
        assert_eq!(inner_product(&tst, &tst, &p), q(1, 6));
        let one = HeckeElem::one(Basis::Group);
        assert_eq!(inner_product(&one, &one, &p), qi(1));
        assert_eq!(inner_product(&HeckeElem::word(Word::S), &one, &p), q(1, 3));
    }

    #[test]
    fn adjoints() {
        assert_eq!(HeckeElem::tau(Word::ST).adjoint(), HeckeElem::tau(Word::z(-1)));
        let x = HeckeElem::from_terms(Basis::Group, [(Word::ONE, qi(2)), (Word::S, qi(3))]);
        assert_eq!(x.adjoint(), x);

        // <tau_s x, y> = <x, tau_s y>, both sides expanded by hand:
        // tau_s tau_t = tau_st, so the left side is <tau_st, tau_st> = q_s q_t = 6;
        // tau_s tau_st = (q_s - 1) tau_st + q_s tau_t, paired with tau_t gives q_s q_t = 6.
        let p = p23();
        let ts = HeckeElem::tau(Word::S);
        let x = HeckeElem::tau(Word::T);
        let y = HeckeElem::tau(Word::ST);
        let lhs = inner_product(&hecke_mul(&ts, &x, &p).unwrap(), &y, &p);
        let rhs = inner_product(&x, &hecke_mul(&ts, &y, &p).unwrap(), &p);
        assert_eq!(lhs, qi(6));
        assert_eq!(rhs, qi(6));
    }

    #[test]
    fn kappa_selection() {
        let p = Params::from_ratios((1, 2), (1, 3));
        let k = kappa_sel_truncated(KappaSign::Plus, 2, &p);
        assert_eq!(k.support_len(), 5);
        assert!(k.terms().all(|(_, c)| *c == qi(1)));

        let p = Params::from_ratios((3, 1), (2, 1));
        let km = kappa_sel_truncated(KappaSign::Minus, 3, &p);
        assert_eq!(km.coeff(Word::S), q(-1, 3));
        assert_eq!(km.coeff(Word::T), qi(1));

        let p = Params::from_ratios((2, 1), (2, 1));
        assert!(kappa_sel_truncated(KappaSign::Minus, 4, &p).is_zero());
        let p = Params::from_ratios((2, 1), (1, 2));
        assert!(kappa_sel_truncated(KappaSign::Plus, 4, &p).is_zero());
    }

    #[test]
    fn kappa_norms() {
        let p = Params::from_ratios((1, 2), (1, 3));
        let k = KappaSpec::new(qi(1), qi(1));
        assert_eq!(kappa_norm_sq(&k, &p).unwrap(), q(12, 5));
        let p2 = Params::from_ratios((2, 1), (2, 1));
        let k2 = KappaSpec::new(q(-1, 2), q(-1, 2));
        assert_eq!(kappa_norm_sq(&k2, &p2).unwrap(), qi(3));
        let tail = qi(3) - kappa_partial_norm_sq(&k2, 40, &p2);
        assert!(tail > Q::zero() && tail < q(1, 1_000_000));
        assert!(matches!(
            kappa_norm_sq(&k, &Params::trivial()),
            Err(Error::Divergent(_))
        ));

        // partial sums approach the closed form from below
        let closed = kappa_norm_sq(&k, &p).unwrap();
        let mut prev = Q::zero();
        for depth in 0..30 {
            let s = kappa_partial_norm_sq(&k, depth, &p);
            assert!(s >= prev && s < closed);
            prev = s;
        }
        assert!(&closed - &prev < q(1, 1_000_000_000));
    }

    #[test]
    fn display() {
        let x = HeckeElem::from_terms(Basis::Group, [(Word::ONE, qi(1)), (Word::ST, qi(-2))]);
        assert_eq!(x.to_string(), "1 - 2*st");
        assert_eq!(HeckeElem::tau(Word::S).scale(&q(1, 2)).to_string(), "1/2*T[s]");
    }
}
