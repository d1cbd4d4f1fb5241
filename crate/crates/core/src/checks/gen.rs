//! Seeded random matrices and systems.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::semiring::{Ext, Semiring};
use crate::series::{t, v, Alphabet, Letter, Polynomial, Sym};
use crate::system::AlgebraicSystem;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A square matrix with grid entries, zero with probability about 2/5.
pub fn matrix<R: Rng>(rng: &mut R, sr: Semiring, n: usize) -> Matrix {
    let grid = sr.grid();
    let vals: Vec<Ext> = (0..n * n)
        .map(|_| if rng.random_bool(0.4) { sr.zero() } else { *grid.choose(rng).unwrap() })
        .collect();
    Matrix::square(sr, n, &vals).expect("grid values")
}

fn coeffs(sr: Semiring) -> Vec<Ext> {
    match sr {
        Semiring::Boolean => vec![Ext::ONE],
        _ => vec![Ext::Fin(1), Ext::Fin(2)],
    }
}

fn alphabet(letters: usize) -> Alphabet {
    Alphabet::new((0..letters).map(|i| ((b'a' + i as u8) as char).to_string()))
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// A proper quadratic GNF system: monomials `a`, `a x`, `a x x'`, one to
/// three per variable, coefficients from {1, 2}.
pub fn gnf_system<R: Rng>(rng: &mut R, sr: Semiring, n: usize, letters: usize) -> AlgebraicSystem {
    let cs = coeffs(sr);
    let rhs = (0..n)
        .map(|_| {
            let k = rng.random_range(1..=3);
            Polynomial::from_terms(
                sr,
                (0..k).map(|_| {
                    let mut w = vec![t(rng.random_range(0..letters) as Letter)];
                    for _ in 0..rng.random_range(0..=2) {
                        w.push(v(rng.random_range(0..n)));
                    }
                    (*cs.choose(rng).unwrap(), w)
                }),
            )
        })
        .collect();
    AlgebraicSystem::new(sr, alphabet(letters), names(n), rhs).expect("well-formed")
}

/// An arbitrary system: monomials of length up to 3 over letters and
/// variables, including `ε` and unit monomials.
pub fn system<R: Rng>(rng: &mut R, sr: Semiring, n: usize, letters: usize) -> AlgebraicSystem {
    let cs = coeffs(sr);
    let rhs = (0..n)
        .map(|_| {
            let k = rng.random_range(1..=3);
            Polynomial::from_terms(
                sr,
                (0..k).map(|_| {
                    let w: Vec<Sym> = (0..rng.random_range(0..=3))
                        .map(|_| {
                            if rng.random_bool(0.5) {
                                t(rng.random_range(0..letters) as Letter)
                            } else {
                                v(rng.random_range(0..n))
                            }
                        })
                        .collect();
                    (*cs.choose(rng).unwrap(), w)
                }),
            )
        })
        .collect();
    AlgebraicSystem::new(sr, alphabet(letters), names(n), rhs).expect("well-formed")
}
