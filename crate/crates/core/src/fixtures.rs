//! Small named algebras used across tests, docs, and benches.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::field::{PrimeField, Rationals};
use crate::quiver::{compile, Arrow, QuiverPresentation, Relation, RelationTerm};

/// `A2`: vertices {1,2}, one arrow a: 1→2, no relations, over F_2.
/// Basis {e1, e2, a}, hereditary.
pub fn a2() -> Arc<Algebra<PrimeField>> {
    let p = QuiverPresentation {
        field: PrimeField::new(2),
        vertices: vec!["1".into(), "2".into()],
        arrows: vec![Arrow {
            label: "a".into(),
            source: 0,
            target: 1,
        }],
        relations: vec![],
        nilpotency_bound: 3,
    };
    compile(&p).expect("a2 compiles")
}

/// `KX2`: one vertex, loop x with x² = 0, over Q. Basis {e1, x},
/// local and not quasi-hereditary.
pub fn kx2() -> Arc<Algebra<Rationals>> {
    let p = QuiverPresentation {
        field: Rationals,
        vertices: vec!["1".into()],
        arrows: vec![Arrow {
            label: "x".into(),
            source: 0,
            target: 0,
        }],
        relations: vec![Relation {
            terms: vec![RelationTerm {
                coeff: Rationals.one(),
                arrows: vec![0, 0],
            }],
            line: 0,
        }],
        nilpotency_bound: 3,
    };
    compile(&p).expect("kx2 compiles")
}

/// `KX2` over F_2; same shape as [`kx2`] for brute-force oracles.
pub fn kx2_f2() -> Arc<Algebra<PrimeField>> {
    let p = QuiverPresentation {
        field: PrimeField::new(2),
        vertices: vec!["1".into()],
        arrows: vec![Arrow {
            label: "x".into(),
            source: 0,
            target: 0,
        }],
        relations: vec![Relation {
            terms: vec![RelationTerm {
                coeff: 1u64,
                arrows: vec![0, 0],
            }],
            line: 0,
        }],
        nilpotency_bound: 3,
    };
    compile(&p).expect("kx2_f2 compiles")
}

/// `A3R`: vertices {1,2,3}, arrows a: 1→2, b: 2→3, relation b∘a = 0,
/// over F_2. Basis {e1, e2, e3, a, b}; quasi-hereditary for five of the
/// six vertex orders but not hereditary.
pub fn a3r() -> Arc<Algebra<PrimeField>> {
    let p = QuiverPresentation {
        field: PrimeField::new(2),
        vertices: vec!["1".into(), "2".into(), "3".into()],
        arrows: vec![
            Arrow {
                label: "a".into(),
                source: 0,
                target: 1,
            },
            Arrow {
                label: "b".into(),
                source: 1,
                target: 2,
            },
        ],
        relations: vec![Relation {
            terms: vec![RelationTerm {
                coeff: 1u64,
                arrows: vec![0, 1],
            }],
            line: 0,
        }],
        nilpotency_bound: 4,
    };
    compile(&p).expect("a3r compiles")
}

/// Linear A_n quiver 1→2→…→n with no relations, over F_2. Hereditary.
pub fn linear_an(n: usize) -> Arc<Algebra<PrimeField>> {
    let p = QuiverPresentation {
        field: PrimeField::new(2),
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows: (0..n - 1)
            .map(|i| Arrow {
                label: format!("a{}", i + 1),
                source: i,
                target: i + 1,
            })
            .collect(),
        relations: vec![],
        nilpotency_bound: n + 1,
    };
    compile(&p).expect("linear quiver compiles")
}
