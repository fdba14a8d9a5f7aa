//! The infinite dihedral group `W = <s, t | s^2 = t^2 = 1>`.
//!
//! Every element is stored in the normal form `z^n` or `z^n s` with `z = st`.
//! The letter strings of reduced words are derived on demand.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};

use crate::rational::{fmt_q, pow_i, q, Q};
use crate::Error;

/// A Coxeter generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S,
    T,
}

impl Gen {
    pub fn word(self) -> Word {
        match self {
            Gen::S => Word::S,
            Gen::T => Word::T,
        }
    }

    pub fn other(self) -> Gen {
        match self {
            Gen::S => Gen::T,
            Gen::T => Gen::S,
        }
    }
}

/// Group element `z^n` (`refl == false`) or `z^n s` (`refl == true`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub n: i64,
    pub refl: bool,
}

impl Word {
    pub const ONE: Word = Word { n: 0, refl: false };
    pub const S: Word = Word { n: 0, refl: true };
    pub const T: Word = Word { n: -1, refl: true };
    pub const ST: Word = Word { n: 1, refl: false };

    pub fn new(n: i64, refl: bool) -> Self {
        Word { n, refl }
    }

    /// `z^n`.
    pub fn z(n: i64) -> Self {
        Word { n, refl: false }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Word) -> Word {
        let n = if self.refl { self.n - other.n } else { self.n + other.n };
        Word { n, refl: self.refl ^ other.refl }
    }

    pub fn inverse(self) -> Word {
        if self.refl {
            self
        } else {
            Word::z(-self.n)
        }
    }

    /// Number of `s` and `t` letters in the reduced word.
    pub fn letter_counts(self) -> (u64, u64) {
        let k = self.n.unsigned_abs();
        match (self.refl, self.n >= 0) {
            (false, _) => (k, k),
            (true, true) => (k + 1, k),
            (true, false) => (k - 1, k),
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> u64 {
        let (ns, nt) = self.letter_counts();
        ns + nt
    }

    pub fn is_one(self) -> bool {
        self == Word::ONE
    }

    /// Reduced word as a letter string, read left to right.
    pub fn letters(self) -> Vec<Gen> {
        let len = self.len() as usize;
        let first = self.first_letter().unwrap_or(Gen::S);
        (0..len)
            .map(|i| if i % 2 == 0 { first } else { first.other() })
            .collect()
    }

    pub fn first_letter(self) -> Option<Gen> {
        if self.is_one() {
            None
        } else if self.n > 0 || (self.refl && self.n == 0) {
            Some(Gen::S)
        } else {
            Some(Gen::T)
        }
    }

    pub fn last_letter(self) -> Option<Gen> {
        self.inverse().first_letter()
    }

    /// Builds the element represented by an arbitrary (not necessarily reduced) letter string.
    pub fn from_letters(letters: &[Gen]) -> Word {
        letters
            .iter()
            .fold(Word::ONE, |acc, g| acc.mul(g.word()))
    }

    /// `q^w`: product of `q_s` over `s`-letters and `q_t` over `t`-letters.
    pub fn q_pow(self, p: &Params) -> Q {
        self.weight(&p.q_s, &p.q_t)
    }

    /// `r^w` for arbitrary per-generator weights.
    pub fn weight(self, r_s: &Q, r_t: &Q) -> Q {
        let (ns, nt) = self.letter_counts();
        pow_i(r_s, ns as i64) * pow_i(r_t, nt as i64)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "e");
        }
        for g in self.letters() {
            write!(f, "{}", if g == Gen::S { 's' } else { 't' })?;
        }
        Ok(())
    }
}

pub fn word_mul(u: Word, v: Word) -> Word {
    u.mul(v)
}

pub fn letter_counts(w: Word) -> (u64, u64) {
    w.letter_counts()
}

pub fn q_pow(w: Word, p: &Params) -> Q {
    w.q_pow(p)
}

/// All words of length at most `depth`, ordered by length, `s`-initial first.
pub fn words_up_to(depth: u64) -> Vec<Word> {
    let mut out = vec![Word::ONE];
    for len in 1..=depth as i64 {
        let half = len / 2;
        if len % 2 == 0 {
            out.push(Word::z(half));
            out.push(Word::z(-half));
        } else {
            out.push(Word::new(half, true));
            out.push(Word::new(-half - 1, true));
        }
    }
    out
}

/// Positive deformation parameters `(q_s, q_t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub q_s: Q,
    pub q_t: Q,
}

impl Params {
    pub fn new(q_s: Q, q_t: Q) -> Result<Self, Error> {
        if !q_s.is_positive() || !q_t.is_positive() {
            return Err(Error::NonPositiveParams(fmt_q(&q_s), fmt_q(&q_t)));
        }
        Ok(Params { q_s, q_t })
    }

    /// Shorthand for small literal parameters; panics on non-positive input.
    pub fn from_ratios(qs: (i64, i64), qt: (i64, i64)) -> Self {
        Params::new(q(qs.0, qs.1), q(qt.0, qt.1)).expect("positive parameters")
    }

    pub fn trivial() -> Self {
        Params { q_s: Q::one(), q_t: Q::one() }
    }

    pub fn get(&self, g: Gen) -> &Q {
        match g {
            Gen::S => &self.q_s,
            Gen::T => &self.q_t,
        }
    }

    /// `c = (1 + q_s)(1 + q_t)`.
    pub fn c_norm(&self) -> Q {
        (Q::one() + &self.q_s) * (Q::one() + &self.q_t)
    }

    /// `1/(1+q_s)` and `1/(1+q_t)`, the generators of the value group besides 1.
    pub fn lambda_gens(&self) -> (Q, Q) {
        (
            (Q::one() + &self.q_s).recip(),
            (Q::one() + &self.q_t).recip(),
        )
    }

    /// Sign of `1 - q_s q_t`.
    pub fn sign_plus(&self) -> i8 {
        ord_sign(Q::one().cmp(&(&self.q_s * &self.q_t)))
    }

    /// Sign of `q_t - q_s`.
    pub fn sign_minus(&self) -> i8 {
        ord_sign(self.q_t.cmp(&self.q_s))
    }

    pub fn region(&self) -> Region {
        Region {
            cmp_prod: (&self.q_s * &self.q_t).cmp(&Q::one()).into(),
            cmp_pair: self.q_s.cmp(&self.q_t).into(),
        }
    }

    /// Swaps the roles of `s` and `t`.
    pub fn swapped(&self) -> Params {
        Params { q_s: self.q_t.clone(), q_t: self.q_s.clone() }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q_s={}, q_t={})", fmt_q(&self.q_s), fmt_q(&self.q_t))
    }
}

fn ord_sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Three-valued comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cmp {
    Lt,
    Eq,
    Gt,
}

impl From<Ordering> for Cmp {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Cmp::Lt,
            Ordering::Equal => Cmp::Eq,
            Ordering::Greater => Cmp::Gt,
        }
    }
}

impl Cmp {
    pub const ALL: [Cmp; 3] = [Cmp::Lt, Cmp::Eq, Cmp::Gt];

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Eq => "=",
            Cmp::Gt => ">",
        }
    }
}

/// Position of `(q_s, q_t)` relative to the curves `q_s q_t = 1` and `q_s = q_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    /// `q_s q_t` compared with 1.
    pub cmp_prod: Cmp,
    /// `q_s` compared with `q_t`.
    pub cmp_pair: Cmp,
}

impl Region {
    pub const fn new(cmp_prod: Cmp, cmp_pair: Cmp) -> Self {
        Region { cmp_prod, cmp_pair }
    }

    /// The four open regions, in the order used for reports.
    pub const OPEN: [Region; 4] = [
        Region::new(Cmp::Lt, Cmp::Lt),
        Region::new(Cmp::Lt, Cmp::Gt),
        Region::new(Cmp::Gt, Cmp::Lt),
        Region::new(Cmp::Gt, Cmp::Gt),
    ];

    /// All nine strata: four open regions, four boundary arcs, and the point `(1, 1)`.
    pub fn all() -> Vec<Region> {
        let mut out = Region::OPEN.to_vec();
        out.extend([
            Region::new(Cmp::Lt, Cmp::Eq),
            Region::new(Cmp::Gt, Cmp::Eq),
            Region::new(Cmp::Eq, Cmp::Lt),
            Region::new(Cmp::Eq, Cmp::Gt),
            Region::new(Cmp::Eq, Cmp::Eq),
        ]);
        out
    }

    pub fn is_open(self) -> bool {
        self.cmp_prod != Cmp::Eq && self.cmp_pair != Cmp::Eq
    }

    /// Sign of right multiplication by `s` on `K+`; `None` on `q_s q_t = 1`.
    pub fn sigma_plus(self) -> Option<i8> {
        match self.cmp_prod {
            Cmp::Lt => Some(1),
            Cmp::Gt => Some(-1),
            Cmp::Eq => None,
        }
    }

    /// Sign of right multiplication by `s` on `K-`; `None` on `q_s = q_t`.
    pub fn sigma_minus(self) -> Option<i8> {
        match self.cmp_pair {
            Cmp::Lt => Some(1),
            Cmp::Gt => Some(-1),
            Cmp::Eq => None,
        }
    }

    /// Open regions whose closure contains this stratum.
    pub fn adjacent_open(self) -> Vec<Region> {
        Region::OPEN
            .into_iter()
            .filter(|r| {
                (self.cmp_prod == Cmp::Eq || self.cmp_prod == r.cmp_prod)
                    && (self.cmp_pair == Cmp::Eq || self.cmp_pair == r.cmp_pair)
            })
            .collect()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q_s*q_t{}1, q_s{}q_t",
            self.cmp_prod.symbol(),
            self.cmp_pair.symbol()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    /// Cancels adjacent equal letters until the string is reduced.
    fn reduce(letters: &[Gen]) -> Vec<Gen> {
        let mut out: Vec<Gen> = Vec::new();
        for &g in letters {
            if out.last() == Some(&g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        out
    }

    fn expand(w: Word) -> Vec<Gen> {
        let k = w.n.unsigned_abs() as usize;
        let mut v = Vec::new();
        for _ in 0..k {
            if w.n >= 0 {
                v.extend([Gen::S, Gen::T]);
            } else {
                v.extend([Gen::T, Gen::S]);
            }
        }
        if w.refl {
            v.push(Gen::S);
        }
        v
    }

    #[test]
    fn group_law_examples() {
        assert_eq!(word_mul(Word::z(1), Word::S), Word::new(1, true));
        assert_eq!(word_mul(Word::S, Word::S), Word::ONE);
        assert_eq!(word_mul(Word::S, Word::z(1)), Word::new(-1, true));
        assert_eq!(Word::new(-1, true), Word::T);
    }

    #[test]
    fn letter_count_examples() {
        assert_eq!(letter_counts(Word::z(2)), (2, 2));
        assert_eq!(letter_counts(Word::new(1, true)), (2, 1));
        assert_eq!(letter_counts(Word::new(-1, true)), (0, 1));
    }

    #[test]
    fn q_pow_examples() {
        let p = Params::from_ratios((1, 2), (1, 3));
        assert_eq!(q_pow(Word::ONE, &p), qi(1));
        assert_eq!(q_pow(Word::z(1), &p), q(1, 6));
        let gen = Params::from_ratios((5, 7), (2, 9));
        assert_eq!(
            q_pow(Word::new(-2, true), &gen),
            &gen.q_s * &gen.q_t * &gen.q_t
        );
        assert_eq!(Word::new(-2, true).to_string(), "tst");
    }

    #[test]
    fn letter_counts_match_brute_force_reduction() {
        for n in -50..=50 {
            for refl in [false, true] {
                let w = Word::new(n, refl);
                let reduced = reduce(&expand(w));
                let ns = reduced.iter().filter(|&&g| g == Gen::S).count() as u64;
                let nt = reduced.len() as u64 - ns;
                assert_eq!(w.letter_counts(), (ns, nt), "word {w:?}");
                assert_eq!(w.letters(), reduced, "word {w:?}");
                assert_eq!(Word::from_letters(&reduced), w);
            }
        }
    }

    #[test]
    fn words_up_to_counts() {
        for depth in 0..8 {
            let ws = words_up_to(depth);
            assert_eq!(ws.len() as u64, 2 * depth + 1);
            assert!(ws.iter().all(|w| w.len() <= depth));
            let mut dedup = ws.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), ws.len());
        }
    }

    #[test]
    fn params_reject_nonpositive() {
        assert!(Params::new(qi(0), qi(1)).is_err());
        assert!(Params::new(qi(1), q(-1, 2)).is_err());
    }

    #[test]
    fn regions() {
        let p = Params::from_ratios((1, 2), (1, 3));
        assert_eq!(p.region(), Region::new(Cmp::Lt, Cmp::Gt));
        assert_eq!(p.c_norm(), q(2, 1));
        assert_eq!(Params::trivial().region(), Region::new(Cmp::Eq, Cmp::Eq));
        assert_eq!(Region::new(Cmp::Eq, Cmp::Eq).adjacent_open().len(), 4);
        assert_eq!(Region::new(Cmp::Lt, Cmp::Eq).adjacent_open().len(), 2);
        assert_eq!(Region::all().len(), 9);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = Word> {
            (-40i64..40, any::<bool>()).prop_map(|(n, r)| Word::new(n, r))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn associative(u in word(), v in word(), w in word()) {
                prop_assert_eq!(u.mul(v).mul(w), u.mul(v.mul(w)));
            }

            #[test]
            fn identity_and_inverse(w in word()) {
                prop_assert_eq!(w.mul(Word::ONE), w);
                prop_assert_eq!(Word::ONE.mul(w), w);
                prop_assert_eq!(w.mul(w.inverse()), Word::ONE);
                prop_assert_eq!(w.inverse().len(), w.len());
            }

            #[test]
            fn counts_add_when_lengths_add(u in word(), v in word()) {
                let uv = u.mul(v);
                let (us, ut) = u.letter_counts();
                let (vs, vt) = v.letter_counts();
                let additive = uv.letter_counts() == (us + vs, ut + vt);
                prop_assert_eq!(additive, uv.len() == u.len() + v.len());
            }
        }
    }
}
