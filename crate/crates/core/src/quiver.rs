//! Quiver presentations and their compilation to structure constants.
//!
//! A presentation is compiled to the path algebra modulo the two-sided
//! ideal generated by its relations. Paths store arrows in application
//! order: the path `[a, b]` means "first `a`, then `b`", and the algebra
//! product `p · q` is "first `q`, then `p`". An arrow `α : i → j` then
//! satisfies `α = e_j · α · e_i`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraError, SparseVec};
use crate::field::Field;
use crate::mat::Mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// One term of a relation: a coefficient times a composable arrow sequence
/// in application order.
#[derive(Clone, Debug)]
pub struct RelationTerm<F: Field> {
    pub coeff: F::Elem,
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Relation<F: Field> {
    pub terms: Vec<RelationTerm<F>>,
    /// Source line for error reporting; 0 when built programmatically.
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct QuiverPresentation<F: Field> {
    pub field: F,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation<F>>,
    /// Paths of length ≥ N must fall into the relation ideal.
    pub nilpotency_bound: usize,
}

/// A path: source vertex plus arrows in application order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn vertex(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.arrows.len()
    }

    /// `self` after `other`: first `other`, then `self`.
    fn compose_after(&self, other: &Path) -> Option<Path> {
        if other.target != self.source {
            return None;
        }
        let mut arrows = other.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }

    fn label(&self, p: &QuiverPresentation<impl Field>) -> String {
        if self.arrows.is_empty() {
            format!("e{}", p.vertices[self.source])
        } else {
            self.arrows
                .iter()
                .map(|&a| p.arrows[a].label.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Hard cap on the number of enumerated paths; presentations past this are
/// outside desk scale.
const MAX_PATHS: usize = 200_000;

struct PathTable {
    /// All paths of length ≤ max_len in global order
    /// (length, source, target, lex arrows).
    paths: Vec<Path>,
    index: BTreeMap<(usize, Vec<usize>), usize>,
    /// First path index of each length, plus a sentinel.
    length_offsets: Vec<usize>,
}

impl PathTable {
    fn build<F: Field>(p: &QuiverPresentation<F>, max_len: usize) -> Result<Self, AlgebraError> {
        let mut by_len: Vec<Vec<Path>> = Vec::with_capacity(max_len + 1);
        by_len.push((0..p.vertices.len()).map(Path::vertex).collect());
        for len in 1..=max_len {
            let mut next = Vec::new();
            for prev in &by_len[len - 1] {
                for (ai, a) in p.arrows.iter().enumerate() {
                    if a.source == prev.target {
                        let mut arrows = prev.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: prev.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            next.sort_by(|x, y| {
                (x.source, x.target, &x.arrows).cmp(&(y.source, y.target, &y.arrows))
            });
            by_len.push(next);
            let total: usize = by_len.iter().map(Vec::len).sum();
            if total > MAX_PATHS {
                return Err(AlgebraError::Invalid(format!(
                    "path space exceeds {MAX_PATHS} monomials; presentation too large"
                )));
            }
        }
        let mut paths = Vec::new();
        let mut length_offsets = Vec::new();
        for group in by_len {
            length_offsets.push(paths.len());
            paths.extend(group);
        }
        length_offsets.push(paths.len());
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, path)| ((path.source, path.arrows.clone()), i))
            .collect();
        Ok(PathTable {
            paths,
            index,
            length_offsets,
        })
    }

    fn lookup(&self, path: &Path) -> Option<usize> {
        self.index.get(&(path.source, path.arrows.clone())).copied()
    }

    fn of_length(&self, len: usize) -> std::ops::Range<usize> {
        self.length_offsets[len]..self.length_offsets[len + 1]
    }
}

impl<F: Field> QuiverPresentation<F> {
    fn validate(&self) -> Result<(), AlgebraError> {
        if self.vertices.is_empty() {
            return Err(AlgebraError::Invalid("no vertices".into()));
        }
        if self.nilpotency_bound == 0 {
            return Err(AlgebraError::Invalid("nilbound must be positive".into()));
        }
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(AlgebraError::Invalid(format!(
                    "arrow {} references an unknown vertex",
                    a.label
                )));
            }
        }
        for rel in &self.relations {
            if rel.terms.is_empty() {
                return Err(AlgebraError::Invalid(format!(
                    "empty relation at line {}",
                    rel.line
                )));
            }
            let mut endpoints = None;
            for term in &rel.terms {
                if term.arrows.len() < 2 {
                    return Err(AlgebraError::NonAdmissible { line: rel.line });
                }
                let mut cur = None;
                let mut src = 0usize;
                for &ai in &term.arrows {
                    let Some(arrow) = self.arrows.get(ai) else {
                        return Err(AlgebraError::Invalid(format!(
                            "relation at line {} uses an unknown arrow",
                            rel.line
                        )));
                    };
                    match cur {
                        None => {
                            src = arrow.source;
                            cur = Some(arrow.target);
                        }
                        Some(t) => {
                            if arrow.source != t {
                                return Err(AlgebraError::InconsistentRelation { line: rel.line });
                            }
                            cur = Some(arrow.target);
                        }
                    }
                }
                let ends = (src, cur.unwrap());
                match endpoints {
                    None => endpoints = Some(ends),
                    Some(e) if e != ends => {
                        return Err(AlgebraError::InconsistentRelation { line: rel.line })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// Compile a presentation to a basic split algebra: the basis is the set of
/// normal-form paths of length < N, idempotents are the vertex paths, and
/// the radical is spanned by the basis paths of length ≥ 1.
pub fn compile<F: Field>(p: &QuiverPresentation<F>) -> Result<Arc<Algebra<F>>, AlgebraError> {
    p.validate()?;
    let f = p.field.clone();
    let n_bound = p.nilpotency_bound;
    let term_lengths: Vec<(usize, usize)> = p
        .relations
        .iter()
        .map(|r| {
            let lens: Vec<usize> = r.terms.iter().map(|t| t.arrows.len()).collect();
            (
                *lens.iter().min().unwrap_or(&0),
                *lens.iter().max().unwrap_or(&0),
            )
        })
        .collect();
    // Inhomogeneous relations need head room above N for the absorption check.
    let spread = term_lengths
        .iter()
        .map(|(lo, hi)| hi - lo)
        .max()
        .unwrap_or(0);
    let max_len = n_bound + spread;
    let table = PathTable::build(p, max_len)?;

    // Ideal generators u·r·v grouped by (source, target). `cap` bounds the
    // longest admitted term length.
    let gen_rows = |cap: usize| -> BTreeMap<(usize, usize), Vec<Vec<(usize, F::Elem)>>> {
        let mut out: BTreeMap<(usize, usize), Vec<Vec<(usize, F::Elem)>>> = BTreeMap::new();
        for (ri, rel) in p.relations.iter().enumerate() {
            let (_, max_term) = term_lengths[ri];
            let first = &rel.terms[0];
            let rel_src = p.arrows[first.arrows[0]].source;
            let rel_tgt = p.arrows[*first.arrows.last().unwrap()].target;
            if max_term > cap {
                continue;
            }
            let pad = cap - max_term;
            for v_len in 0..=pad {
                for vi in table.of_length(v_len) {
                    let v = &table.paths[vi];
                    if v.target != rel_src {
                        continue;
                    }
                    for u_len in 0..=(pad - v_len) {
                        for ui in table.of_length(u_len) {
                            let u = &table.paths[ui];
                            if u.source != rel_tgt {
                                continue;
                            }
                            let mut row: Vec<(usize, F::Elem)> = Vec::new();
                            for term in &rel.terms {
                                let mut arrows = v.arrows.clone();
                                arrows.extend_from_slice(&term.arrows);
                                arrows.extend_from_slice(&u.arrows);
                                let full = Path {
                                    source: v.source,
                                    target: u.target,
                                    arrows,
                                };
                                let idx = table
                                    .lookup(&full)
                                    .expect("composite path is within max_len");
                                row.push((idx, term.coeff.clone()));
                            }
                            out.entry((v.source, u.target)).or_default().push(row);
                        }
                    }
                }
            }
        }
        out
    };

    // Absorption: every path of length N must lie in the span of generators
    // whose terms all have length ≤ max_len. (Exact for length-homogeneous
    // relations; a sound lower bound otherwise.)
    {
        let gens = gen_rows(max_len);
        for wi in table.of_length(n_bound) {
            let w = &table.paths[wi];
            let block: Vec<usize> = (table.of_length(2).start..table.of_length(max_len).end)
                .filter(|&i| {
                    let q = &table.paths[i];
                    q.source == w.source && q.target == w.target
                })
                .collect();
            let col_of: BTreeMap<usize, usize> =
                block.iter().enumerate().map(|(c, &i)| (i, c)).collect();
            let mut m = Mat::zeros(f.clone(), 0, block.len());
            if let Some(rows) = gens.get(&(w.source, w.target)) {
                for row in rows {
                    let mut v = vec![f.zero(); block.len()];
                    for (idx, c) in row {
                        let col = col_of[idx];
                        v[col] = f.add(&v[col], c);
                    }
                    m.push_row(&v);
                }
            }
            let mut target = vec![f.zero(); block.len()];
            target[col_of[&wi]] = f.one();
            let contained = m.rows() > 0 && m.solve_left(&target).is_some();
            if !contained {
                return Err(AlgebraError::NotNilpotent {
                    bound: n_bound,
                    witness: w.label(p),
                });
            }
        }
    }

    // Projection of the ideal onto paths of length < N, blockwise; pivot
    // monomials get rewritten, non-pivots survive as the algebra basis.
    let short_range = 0..table.of_length(n_bound).start;
    let mut is_pivot = vec![false; table.paths.len()];
    // reduction[monomial] = its normal form over surviving monomials.
    let mut reduction: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
    {
        let gens = gen_rows(max_len);
        let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for i in short_range.clone() {
            let q = &table.paths[i];
            if q.len() >= 2 {
                blocks.entry((q.source, q.target)).or_default().push(i);
            }
        }
        for (key, block) in &blocks {
            let col_of: BTreeMap<usize, usize> =
                block.iter().enumerate().map(|(c, &i)| (i, c)).collect();
            let mut m = Mat::zeros(f.clone(), 0, block.len());
            if let Some(rows) = gens.get(key) {
                for row in rows {
                    // Truncate terms of length ≥ N; keep rows with a short term.
                    let mut v = vec![f.zero(); block.len()];
                    let mut any = false;
                    for (idx, c) in row {
                        if *idx < short_range.end {
                            let col = col_of[idx];
                            v[col] = f.add(&v[col], c);
                            any = true;
                        }
                    }
                    if any {
                        m.push_row(&v);
                    }
                }
            }
            if m.rows() == 0 {
                continue;
            }
            let (r, pivots) = m.rref();
            for (row_i, &pc) in pivots.iter().enumerate() {
                let mono = block[pc];
                is_pivot[mono] = true;
                let mut nf = Vec::new();
                for (c, &bi) in block.iter().enumerate() {
                    if c == pc {
                        continue;
                    }
                    let coeff = r.at(row_i, c);
                    if !f.is_zero(coeff) {
                        nf.push((bi, f.neg(coeff)));
                    }
                }
                reduction.insert(mono, nf);
            }
        }
        // Resolve chains: a normal form may still mention pivot monomials of
        // other rows only if rref left them; rref zeroes other pivots within
        // a block, and blocks are disjoint, so one pass suffices.
        debug_assert!(reduction
            .values()
            .flatten()
            .all(|(i, _)| !is_pivot[*i]));
    }

    let basis_paths: Vec<usize> = short_range.clone().filter(|&i| !is_pivot[i]).collect();
    let basis_pos: BTreeMap<usize, usize> = basis_paths
        .iter()
        .enumerate()
        .map(|(k, &i)| (i, k))
        .collect();
    let dim = basis_paths.len();
    let labels: Vec<String> = basis_paths
        .iter()
        .map(|&i| table.paths[i].label(p))
        .collect();

    let reduce_mono = |idx: usize| -> SparseVec<F> {
        if idx >= short_range.end {
            return Vec::new();
        }
        if let Some(nf) = reduction.get(&idx) {
            nf.iter().map(|(i, c)| (basis_pos[i], c.clone())).collect()
        } else {
            vec![(basis_pos[&idx], f.one())]
        }
    };

    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for (bi, &pi) in basis_paths.iter().enumerate() {
        for (bj, &pj) in basis_paths.iter().enumerate() {
            // b_i · b_j = "first b_j, then b_i".
            let Some(prod) = table.paths[pi].compose_after(&table.paths[pj]) else {
                continue;
            };
            if prod.len() >= n_bound {
                continue; // absorbed into the ideal
            }
            let idx = table.lookup(&prod).expect("short path is enumerated");
            let mut entry = reduce_mono(idx);
            entry.sort_by_key(|(k, _)| *k);
            mult[bi][bj] = entry;
        }
    }

    let idems: Vec<usize> = (0..p.vertices.len())
        .map(|v| basis_pos[&table.lookup(&Path::vertex(v)).unwrap()])
        .collect();
    let mut radical = Mat::zeros(f.clone(), 0, dim);
    for (bi, &pi) in basis_paths.iter().enumerate() {
        if table.paths[pi].len() >= 1 {
            let mut row = vec![f.zero(); dim];
            row[bi] = f.one();
            radical.push_row(&row);
        }
    }

    Algebra::new(f, labels, mult, idems, radical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::fixtures;

    #[test]
    fn a2_compiles_to_dim_3() {
        let a = fixtures::a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.basis_labels(), &["e1", "e2", "a"]);
        assert_eq!(a.radical_dim(), 1);
        assert!(!a.is_semisimple());
    }

    #[test]
    fn kx2_compiles_to_dim_2() {
        let a = fixtures::kx2();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis_labels(), &["e1", "x"]);
        assert_eq!(a.radical_dim(), 1);
        assert!(!a.is_semisimple());
    }

    #[test]
    fn a3r_compiles_to_dim_5() {
        let a = fixtures::a3r();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.basis_labels(), &["e1", "e2", "e3", "a", "b"]);
        assert_eq!(a.radical_dim(), 2);
    }

    #[test]
    fn a3_without_relation_keeps_composite() {
        // Same quiver as a3r but no relation: the composite path survives.
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
            relations: vec![],
            nilpotency_bound: 4,
        };
        let a = compile(&p).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.basis_label(5), "a*b");
    }

    #[test]
    fn loop_without_relation_is_not_nilpotent() {
        let p = QuiverPresentation {
            field: Rationals,
            vertices: vec!["1".into()],
            arrows: vec![Arrow {
                label: "x".into(),
                source: 0,
                target: 0,
            }],
            relations: vec![],
            nilpotency_bound: 3,
        };
        match compile(&p) {
            Err(AlgebraError::NotNilpotent { bound: 3, .. }) => {}
            other => panic!("expected NotNilpotent, got {other:?}"),
        }
    }

    #[test]
    fn short_relation_is_rejected() {
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
                    arrows: vec![0],
                }],
                line: 7,
            }],
            nilpotency_bound: 3,
        };
        assert_eq!(compile(&p).unwrap_err(), AlgebraError::NonAdmissible { line: 7 });
    }

    #[test]
    fn mixed_endpoints_are_rejected() {
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
                Arrow {
                    label: "c".into(),
                    source: 1,
                    target: 1,
                },
            ],
            relations: vec![Relation {
                terms: vec![
                    RelationTerm {
                        coeff: PrimeField::new(2).one(),
                        arrows: vec![0, 1],
                    },
                    RelationTerm {
                        coeff: PrimeField::new(2).one(),
                        arrows: vec![0, 2],
                    },
                ],
                line: 4,
            }],
            nilpotency_bound: 4,
        };
        assert_eq!(
            compile(&p).unwrap_err(),
            AlgebraError::InconsistentRelation { line: 4 }
        );
    }

    #[test]
    fn commutative_square_with_identification() {
        // Two routes 1→4 identified by a binomial relation: dim drops by 1.
        let f2 = PrimeField::new(2);
        let arrows = vec![
            Arrow { label: "a".into(), source: 0, target: 1 },
            Arrow { label: "b".into(), source: 1, target: 3 },
            Arrow { label: "c".into(), source: 0, target: 2 },
            Arrow { label: "d".into(), source: 2, target: 3 },
        ];
        let mk = |rels: Vec<Relation<PrimeField>>| QuiverPresentation {
            field: f2,
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            arrows: arrows.clone(),
            relations: rels,
            nilpotency_bound: 4,
        };
        let free = compile(&mk(vec![])).unwrap();
        assert_eq!(free.dim(), 10); // 4 vertices + 4 arrows + 2 length-2 paths
        let rel = Relation {
            terms: vec![
                RelationTerm { coeff: 1u64, arrows: vec![0, 1] },
                RelationTerm { coeff: 1u64, arrows: vec![2, 3] },
            ],
            line: 1,
        };
        let glued = compile(&mk(vec![rel])).unwrap();
        assert_eq!(glued.dim(), 9);
        // The surviving length-2 basis path is the lex-later route c*d.
        assert!(glued.basis_labels().contains(&"c*d".to_string()));
        assert!(!glued.basis_labels().contains(&"a*b".to_string()));
    }

    #[test]
    fn opposite_of_a2_reverses_the_arrow() {
        let a = fixtures::a2();
        let opp = a.opposite();
        // In the opposite algebra the arrow starts at vertex 2: a·e2 = a.
        let e2 = opp.basis_elem(1);
        let arrow = opp.basis_elem(2);
        assert_eq!(opp.elem_mul(&arrow, &e2), arrow);
    }
}
