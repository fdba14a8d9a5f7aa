//! Seeded random inputs for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dihedral::{words_up_to, Params, Word};
use crate::hecke::{Basis, HeckeElem};
use crate::kernel::HeckeMatrix;
use crate::laurent::LaurentPoly;
use crate::matrix::LaurentMatrix;
use crate::rational::{q, Q};

fn small_q<R: Rng>(rng: &mut R) -> Q {
    let n = rng.gen_range(-3..=3);
    let d = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    q(n, d)
}

/// Element supported on words of length at most `max_len`, in either basis.
pub fn random_elem<R: Rng>(rng: &mut R, basis: Basis, max_len: u64) -> HeckeElem {
    let words = words_up_to(max_len);
    let k = rng.gen_range(0..=words.len().min(4));
    let terms: Vec<(Word, Q)> = (0..k).map(|_| (*words.choose(rng).unwrap(), small_q(rng))).collect();
    HeckeElem::from_terms(basis, terms)
}

/// Matrix of size at most `max_dim x max_dim` with entries of length at most `max_len`.
///
/// About half the time one row is replaced by a left multiple of another, so
/// that nontrivial kernels are common.
pub fn random_hecke_matrix<R: Rng>(
    rng: &mut R,
    basis: Basis,
    max_dim: usize,
    max_len: u64,
    p: &Params,
) -> HeckeMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let mut grid: Vec<Vec<HeckeElem>> = (0..rows)
        .map(|_| (0..cols).map(|_| random_elem(rng, basis, max_len)).collect())
        .collect();
    if rows > 1 && rng.gen_bool(0.5) {
        let (i, k) = (0, rng.gen_range(1..rows));
        let r = random_elem(rng, basis, 1);
        grid[k] = grid[i]
            .iter()
            .map(|e| r.mul(e, p).expect("same basis"))
            .collect();
    }
    HeckeMatrix::new(basis, grid).expect("rectangular")
}

/// Group-basis matrix with its first row left-multiplied by `1 - st` or
/// `1 + st`, so that `K+` or `K-` often meets the kernel.
pub fn random_structured_matrix<R: Rng>(rng: &mut R, max_dim: usize, max_len: u64) -> HeckeMatrix {
    let p = Params::trivial();
    let m = random_hecke_matrix(rng, Basis::Group, max_dim, max_len, &p);
    let one = HeckeElem::one(Basis::Group);
    let st = HeckeElem::word(Word::ST);
    let factors = [&one - &st, &one + &st];
    let f = factors.choose(rng).unwrap();
    let mut rows = m.to_rows();
    for e in rows[0].iter_mut() {
        *e = f.mul(e, &p).expect("group basis");
    }
    HeckeMatrix::new(Basis::Group, rows).expect("rectangular")
}

pub fn random_laurent<R: Rng>(rng: &mut R, max_deg: i64) -> LaurentPoly {
    let k = rng.gen_range(0..=3);
    LaurentPoly::from_terms((0..k).map(|_| (rng.gen_range(-max_deg..=max_deg), small_q(rng))))
}

/// Laurent matrix up to `max_dim x max_dim`, exponents in `[-max_deg, max_deg]`,
/// with a dependent row (constant combination of two others) planted about half the time.
pub fn random_laurent_matrix<R: Rng>(rng: &mut R, max_dim: usize, max_deg: i64) -> LaurentMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let mut grid: Vec<Vec<LaurentPoly>> = (0..rows)
        .map(|_| (0..cols).map(|_| random_laurent(rng, max_deg)).collect())
        .collect();
    if rows > 2 && rng.gen_bool(0.5) {
        let f = LaurentPoly::constant(small_q(rng));
        let g = LaurentPoly::constant(small_q(rng));
        let k = rows - 1;
        grid[k] = (0..cols).map(|j| &(&f * &grid[0][j]) + &(&g * &grid[1][j])).collect();
    }
    LaurentMatrix::from_rows(grid).expect("rectangular")
}
