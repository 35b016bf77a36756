//! The independent linear-algebra oracle for graded ranks.
//!
//! For a degree `d`, the matrix whose rows are (relation generator) x
//! (complementary-degree free monomial), expressed in the free monomial
//! basis, presents the degree-d piece of the ring. Its integer normal form
//! gives the free rank and certifies the quotient torsion-free, with no use
//! of the straightening path it is checked against.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::linalg::SparseIntMatrix;
use crate::ring::{Monomial, RingContext, RingError};

/// Default ceiling on the free-monomial count the oracle will materialize.
pub const DEFAULT_MAX_MONOMIALS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub degree: usize,
    pub n_monomials: usize,
    pub n_relation_rows: usize,
    pub free_rank: usize,
    pub torsion_free: bool,
    pub nonunit_factors: Vec<BigInt>,
}

/// Rank and torsion certificate for the degree-`d` graded piece.
pub fn oracle_basis(
    ctx: &RingContext,
    d: usize,
    max_monomials: usize,
) -> Result<OracleReport, RingError> {
    let gens = ctx.generators();
    let count = Monomial::count_free(gens.len(), d);
    if count > max_monomials {
        return Err(RingError::SizeLimit {
            actual: count,
            limit: max_monomials,
        });
    }
    let monomials = Monomial::enumerate_free(&gens, d);
    debug_assert_eq!(monomials.len(), count);
    let index: HashMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut matrix = SparseIntMatrix::new(monomials.len());
    let mut n_rows = 0usize;
    for rel in ctx.relation_generators() {
        let rel_deg = match rel.homogeneity() {
            crate::ring::Homogeneity::Degree(k) => k as usize,
            _ => unreachable!("relation generators are homogeneous and nonzero"),
        };
        if rel_deg > d {
            continue;
        }
        for u in Monomial::enumerate_free(&gens, d - rel_deg) {
            let entries: Vec<(usize, BigInt)> = rel
                .terms()
                .map(|(m, c)| (index[&u.mul(m)], c.clone()))
                .collect();
            matrix.push_row(entries);
            n_rows += 1;
        }
    }

    let reduction = matrix.reduce();
    Ok(OracleReport {
        degree: d,
        n_monomials: monomials.len(),
        n_relation_rows: n_rows,
        free_rank: monomials.len() - reduction.rank,
        torsion_free: reduction.torsion_free(),
        nonunit_factors: reduction.nonunit_factors,
    })
}
