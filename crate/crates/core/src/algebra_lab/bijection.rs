//! Bijections between chains of left ideals of `A = M_n(F_q)` and chains of
//! left ideals in smaller matrix algebras, together with their inverses.
//!
//! A chain `I_1 ⊆ I_2 ⊆ ... ⊆ I_r` of left ideals with `dim I_j = n i_j`
//! corresponds to a flag `V_1 ⊇ ... ⊇ V_r` with `dim V_j = n - i_j`.

use super::field::FiniteField;
use super::ideal::{IdealRep, Side};
use super::linalg::Subspace;
use super::quotient::{QuotientAlgebra, QuotientMode};
use crate::error::{Error, Result};

fn reduced_dim(ideal: &IdealRep, what: &str) -> Result<usize> {
    if ideal.side() != Side::Left {
        return Err(Error::Precondition(format!("{what} must be a left ideal")));
    }
    ideal.reduced_dim().ok_or_else(|| {
        Error::Precondition(format!(
            "{what} has dimension {}, not a multiple of {}",
            ideal.dim(),
            ideal.degree()
        ))
    })
}

fn check_chain(chain: &[IdealRep]) -> Result<()> {
    for (j, pair) in chain.windows(2).enumerate() {
        if !pair[1].contains(&pair[0]) {
            return Err(Error::Precondition(format!(
                "chain is not increasing at position {}",
                j + 1
            )));
        }
    }
    Ok(())
}

fn span_to_left_ideal(field: FiniteField, degree: usize, vectors: Vec<Vec<u8>>) -> Result<IdealRep> {
    IdealRep::new(Side::Left, degree, Subspace::span(field, degree * degree, vectors))
}

/// `J ↦ J°I` for a left ideal `I` of reduced dimension 1 and a left ideal
/// `J ⊇ I`. The result is a subspace of `I°I` of dimension `n - j`.
pub fn effective_forward(i: &IdealRep, j: &IdealRep) -> Result<Subspace> {
    if reduced_dim(i, "I")? != 1 {
        return Err(Error::Precondition(format!(
            "I must have dimension n = {}, got {}",
            i.degree(),
            i.dim()
        )));
    }
    let jd = reduced_dim(j, "J")?;
    if !j.contains(i) {
        return Err(Error::Precondition("I is not contained in J".into()));
    }
    let w = j.annihilator().product(i);
    if w.dim() != i.degree() - jd {
        return Err(Error::Inconsistent(format!(
            "J°I has dimension {}, expected {}",
            w.dim(),
            i.degree() - jd
        )));
    }
    Ok(w)
}

/// `W ↦ °(W A)` for `W ⊆ I°I`; returns a left ideal containing `I`.
pub fn effective_inverse(i: &IdealRep, w: &Subspace) -> Result<IdealRep> {
    if reduced_dim(i, "I")? != 1 {
        return Err(Error::Precondition("I must have reduced dimension 1".into()));
    }
    let n = i.degree();
    if !i.annihilator().product(i).contains_subspace(w) {
        return Err(Error::Precondition("W is not contained in I°I".into()));
    }
    let result = IdealRep::generated(i.field(), Side::Right, n, w).left_annihilator();
    if result.dim() != n * (n - w.dim()) || !result.contains(i) {
        return Err(Error::Inconsistent(format!(
            "°(WA) has dimension {}, expected {}",
            result.dim(),
            n * (n - w.dim())
        )));
    }
    Ok(result)
}

/// `(I_j) ↦ (I_1°I_j / I_1°I_1)` inside `I_1°/I_1°I_1 ≅ M_{n - i_1}`, for
/// `I_1 ⊆ I_2 ⊆ ... ⊆ I_r` (the chain argument omits `I_1`).
pub fn first_forward(first: &IdealRep, chain: &[IdealRep]) -> Result<Vec<IdealRep>> {
    reduced_dim(first, "I_1")?;
    check_chain(chain)?;
    let quotient = QuotientAlgebra::new_allow_degenerate(first, QuotientMode::AnnihilatorSide)?;
    let annihilator = first.annihilator();
    let degree = quotient.degree();
    chain
        .iter()
        .map(|ideal| {
            reduced_dim(ideal, "chain member")?;
            if !ideal.contains(first) {
                return Err(Error::Precondition("I_1 is not contained in the chain".into()));
            }
            let product = annihilator.product(ideal);
            let images = super::ideal::basis_matrices(first.degree(), &product)
                .iter()
                .map(|x| quotient.project(x).map(|c| c.into_flat()))
                .collect::<Result<Vec<_>>>()?;
            span_to_left_ideal(first.field(), degree, images)
        })
        .collect()
}

/// `(J_j) ↦ (A π_1^{-1}(J_j))` where `π_1 : I_1° → I_1°/I_1°I_1`.
pub fn first_inverse(first: &IdealRep, images: &[IdealRep]) -> Result<Vec<IdealRep>> {
    reduced_dim(first, "I_1")?;
    check_chain(images)?;
    let quotient = QuotientAlgebra::new_allow_degenerate(first, QuotientMode::AnnihilatorSide)?;
    let n = first.degree();
    let out = images
        .iter()
        .map(|image| {
            let preimage = preimage(&quotient, image)?;
            Ok(IdealRep::generated(first.field(), Side::Left, n, &preimage))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// `(I_j) ↦ (I_j / I_r°I_j)` inside `I_r/I_r°I_r ≅ M_{i_r}`, for
/// `I_1 ⊆ ... ⊆ I_r` (the chain argument omits `I_r`).
pub fn last_forward(last: &IdealRep, chain: &[IdealRep]) -> Result<Vec<IdealRep>> {
    reduced_dim(last, "I_r")?;
    check_chain(chain)?;
    let quotient = QuotientAlgebra::new_allow_degenerate(last, QuotientMode::IdealSide)?;
    let degree = quotient.degree();
    chain
        .iter()
        .map(|ideal| {
            reduced_dim(ideal, "chain member")?;
            if !last.contains(ideal) {
                return Err(Error::Precondition("chain member is not contained in I_r".into()));
            }
            let images = ideal
                .matrices()
                .iter()
                .map(|x| quotient.project(x).map(|c| c.into_flat()))
                .collect::<Result<Vec<_>>>()?;
            span_to_left_ideal(last.field(), degree, images)
        })
        .collect()
}

/// `(J_j) ↦ (I_r π_r^{-1}(J_j))` where `π_r : I_r → I_r/I_r°I_r`.
///
/// Multiplying the preimage by all of `A` instead of by `I_r` would give
/// `I_r` for every `J_j`, because the kernel `I_r°I_r` already generates
/// `I_r` as a left ideal.
pub fn last_inverse(last: &IdealRep, images: &[IdealRep]) -> Result<Vec<IdealRep>> {
    reduced_dim(last, "I_r")?;
    check_chain(images)?;
    let quotient = QuotientAlgebra::new_allow_degenerate(last, QuotientMode::IdealSide)?;
    let n = last.degree();
    images
        .iter()
        .map(|image| {
            let preimage = preimage(&quotient, image)?;
            let product = super::ideal::product_span(last.field(), n, last.space(), &preimage);
            IdealRep::new(Side::Left, n, product)
        })
        .collect()
}

/// `π^{-1}(J)`: lifts of a basis of `J` plus the kernel of the quotient map.
pub fn preimage(quotient: &QuotientAlgebra, image: &IdealRep) -> Result<Subspace> {
    if image.side() != Side::Left || image.degree() != quotient.degree() {
        return Err(Error::Precondition(format!(
            "expected a left ideal of M_{}, got a {} ideal of M_{}",
            quotient.degree(),
            image.side(),
            image.degree()
        )));
    }
    let n = quotient.ideal().degree();
    let lifts = image
        .matrices()
        .iter()
        .map(|c| quotient.lift(c).into_flat())
        .collect();
    Ok(Subspace::span(quotient.field(), n * n, lifts).sum(quotient.kernel()))
}

/// Images of a chain split at position `s` (1-based): the members below `I_s`
/// go to `I_s/I_s°I_s` and those above go to `I_s°/I_s°I_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitChain {
    pub below: Vec<IdealRep>,
    pub above: Vec<IdealRep>,
}

/// Composition of [`last_forward`] on `I_1..I_{s-1}` and [`first_forward`]
/// on `I_{s+1}..I_r`, both relative to `I_s`.
pub fn general_forward(chain: &[IdealRep], s: usize) -> Result<SplitChain> {
    if s == 0 || s > chain.len() {
        return Err(Error::Precondition(format!(
            "position s = {s} outside 1..={}",
            chain.len()
        )));
    }
    check_chain(chain)?;
    let pivot = &chain[s - 1];
    Ok(SplitChain {
        below: last_forward(pivot, &chain[..s - 1])?,
        above: first_forward(pivot, &chain[s..])?,
    })
}

/// Rebuilds the full chain from `I_s` and its two image chains.
pub fn general_inverse(pivot: &IdealRep, split: &SplitChain) -> Result<Vec<IdealRep>> {
    let mut chain = last_inverse(pivot, &split.below)?;
    chain.push(pivot.clone());
    chain.extend(first_inverse(pivot, &split.above)?);
    check_chain(&chain)?;
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FiniteField {
        FiniteField::new(2).unwrap()
    }

    fn left(vectors: Vec<Vec<u8>>, n: usize) -> IdealRep {
        IdealRep::from_subspace(&Subspace::span(f2(), n, vectors), Side::Left)
    }

    #[test]
    fn effective_boundary_cases() {
        // I attached to a hyperplane of F_2^3.
        let i = left(vec![vec![1, 0, 0], vec![0, 1, 0]], 3);
        let whole = IdealRep::whole(f2(), Side::Left, 3);
        assert_eq!(effective_forward(&i, &whole).unwrap().dim(), 0);
        let w = effective_forward(&i, &i).unwrap();
        assert_eq!(w, i.annihilator().product(&i));
        assert_eq!(w.dim(), 2);
        assert_eq!(effective_inverse(&i, &w).unwrap(), i);
        let small = left(vec![vec![1, 0, 0]], 3);
        assert!(effective_forward(&small, &whole).is_err());
    }

    #[test]
    fn first_and_last_dimensions() {
        let i1 = left(vec![vec![1, 0, 0], vec![0, 1, 0]], 3);
        let i2 = left(vec![vec![1, 0, 0]], 3);
        let up = first_forward(&i1, std::slice::from_ref(&i2)).unwrap();
        assert_eq!(up[0].degree(), 2);
        assert_eq!(up[0].dim(), 2);
        assert_eq!(first_inverse(&i1, &up).unwrap(), vec![i2.clone()]);
        let down = last_forward(&i2, std::slice::from_ref(&i1)).unwrap();
        assert_eq!(down[0].degree(), 2);
        assert_eq!(down[0].dim(), 2);
        assert_eq!(last_inverse(&i2, &down).unwrap(), vec![i1.clone()]);
        assert!(first_forward(&i1, &[]).unwrap().is_empty());
        assert!(last_forward(&i2, &[]).unwrap().is_empty());
    }

    #[test]
    fn generating_the_preimage_by_all_of_a_collapses() {
        let i1 = left(vec![vec![1, 0, 0], vec![0, 1, 0]], 3);
        let i2 = left(vec![vec![1, 0, 0]], 3);
        let quotient = QuotientAlgebra::new(&i2, QuotientMode::IdealSide).unwrap();
        let down = last_forward(&i2, std::slice::from_ref(&i1)).unwrap();
        let pre = preimage(&quotient, &down[0]).unwrap();
        let by_all = IdealRep::generated(f2(), Side::Left, 3, &pre);
        assert_eq!(by_all, i2);
        assert_ne!(by_all, i1);
    }

    #[test]
    fn general_reduces_to_the_one_sided_cases() {
        let i1 = left(vec![vec![1, 0, 0], vec![0, 1, 0]], 3);
        let i2 = left(vec![vec![1, 0, 0]], 3);
        let chain = vec![i1.clone(), i2.clone()];
        let at_last = general_forward(&chain, 2).unwrap();
        assert!(at_last.above.is_empty());
        assert_eq!(at_last.below, last_forward(&i2, &chain[..1]).unwrap());
        let at_first = general_forward(&chain, 1).unwrap();
        assert!(at_first.below.is_empty());
        assert_eq!(at_first.above, first_forward(&i1, &chain[1..]).unwrap());
        assert_eq!(general_inverse(&i2, &at_last).unwrap(), chain);
        assert_eq!(general_inverse(&i1, &at_first).unwrap(), chain);
        assert!(general_forward(&chain, 3).is_err());
        assert!(general_forward(&[i2, i1], 1).is_err());
    }
}
