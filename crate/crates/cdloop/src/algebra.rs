//! The 2^n-dimensional algebra over exact integer coefficients, driven by
//! the loop's structure constants.
//!
//! Structure constants are all ±1, so integer arithmetic is exact and a
//! zero-divisor certificate is a strict equality, never a tolerance.

use std::fmt;

use serde::Serialize;

use crate::error::LoopError;
use crate::subloops::Subloop;
use crate::table::LoopTable;

/// A vector of exact integer coefficients over the basis `e_0 .. e_{d-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    coeffs: Vec<i64>,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coeffs: vec![0; dim],
        }
    }

    /// The basis element `e_i`.
    pub fn basis(i: usize, dim: usize) -> Self {
        let mut coeffs = vec![0; dim];
        coeffs[i] = 1;
        AlgebraElement { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let a = c.abs();
            if a == 1 {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{a}e{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Bilinear extension of the basis product.
pub fn alg_multiply(
    u: &AlgebraElement,
    v: &AlgebraElement,
    l: &LoopTable,
) -> Result<AlgebraElement, LoopError> {
    let dim = l.half_order();
    for e in [u, v] {
        if e.dim() != dim {
            return Err(LoopError::DimensionMismatch {
                got: e.dim(),
                expected: dim,
            });
        }
    }
    let mut out = vec![0i64; dim];
    for i in 0..dim {
        let ui = u.coeffs[i];
        if ui == 0 {
            continue;
        }
        for j in 0..dim {
            let vj = v.coeffs[j];
            if vj == 0 {
                continue;
            }
            out[i ^ j] += l.basis_sign(i, j) as i64 * ui * vj;
        }
    }
    Ok(AlgebraElement::from_coeffs(out))
}

/// Conjugation: the unit coefficient is fixed, all others are negated.
pub fn conjugate(u: &AlgebraElement) -> AlgebraElement {
    let mut coeffs = u.coeffs.clone();
    for c in coeffs.iter_mut().skip(1) {
        *c = -*c;
    }
    AlgebraElement::from_coeffs(coeffs)
}

/// Sum of squared coefficients; zero iff `u` is the zero vector.
pub fn norm_sq(u: &AlgebraElement) -> i128 {
    u.coeffs.iter().map(|&c| (c as i128) * (c as i128)).sum()
}

/// A certified zero-divisor pair: `u v = 0` with `u, v` nonzero.
#[derive(Clone, Debug)]
pub struct ZeroDivisorPair {
    pub u: AlgebraElement,
    pub v: AlgebraElement,
}

/// Export record for one zero-divisor search.
#[derive(Serialize)]
pub struct ZeroDivisorRecord {
    pub support: Vec<usize>,
    pub u: Option<Vec<i64>>,
    pub v: Option<Vec<i64>>,
}

/// Exhaustive search for a zero-divisor pair among two-term combinations
/// `(e_a ± e_b)(e_c ± e_d)` with all four indices drawn from `support`.
///
/// The product of two such elements expands into four signed basis terms
/// whose indices pair up exactly when `a^b = c^d`, so each candidate is a
/// four-lookup cancellation test. Any hit is re-verified through the full
/// bilinear product before being returned.
pub fn find_zero_divisor(l: &LoopTable, support: u128) -> Option<ZeroDivisorPair> {
    let dim = l.half_order();
    let indices: Vec<usize> = (0..dim).filter(|&i| support >> i & 1 == 1).collect();
    let m = indices.len();
    for ai in 0..m {
        for bi in (ai + 1)..m {
            let (a, b) = (indices[ai], indices[bi]);
            for ci in 0..m {
                for di in (ci + 1)..m {
                    let (c, d) = (indices[ci], indices[di]);
                    if a ^ b != c ^ d {
                        continue;
                    }
                    for su in [1i64, -1] {
                        for sv in [1i64, -1] {
                            let t_ac = l.basis_sign(a, c) as i64;
                            let t_ad = sv * l.basis_sign(a, d) as i64;
                            let t_bc = su * l.basis_sign(b, c) as i64;
                            let t_bd = su * sv * l.basis_sign(b, d) as i64;
                            if t_ac + t_bd != 0 || t_ad + t_bc != 0 {
                                continue;
                            }
                            let mut u = AlgebraElement::zero(dim);
                            u.coeffs[a] = 1;
                            u.coeffs[b] = su;
                            let mut v = AlgebraElement::zero(dim);
                            v.coeffs[c] = 1;
                            v.coeffs[d] = sv;
                            let product = alg_multiply(&u, &v, l).expect("dimensions match");
                            assert!(product.is_zero(), "cancellation test disagrees with product");
                            return Some(ZeroDivisorPair { u, v });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Algebra-level identities checked over the deterministic witness grid of
/// all signed two-term basis combinations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgebraIdentity {
    /// `u(vu) = (uv)u`.
    Flexible,
    /// `u(uv) = (uu)v`.
    LeftAlternative,
    /// `(uv)v = u(vv)`.
    RightAlternative,
    /// `u^a u^b = u^(a+b)` for `a + b <= 4`, left-associated powers.
    PowerAssociative,
}

impl AlgebraIdentity {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraIdentity::Flexible => "FLEX",
            AlgebraIdentity::LeftAlternative => "ALT_left",
            AlgebraIdentity::RightAlternative => "ALT_right",
            AlgebraIdentity::PowerAssociative => "PAP",
        }
    }
}

/// Exact counterexample for a failed algebra identity.
#[derive(Clone, Debug)]
pub enum AlgebraWitness {
    Pair { u: AlgebraElement, v: AlgebraElement },
    Power { u: AlgebraElement, a: u32, b: u32 },
}

impl fmt::Display for AlgebraWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraWitness::Pair { u, v } => write!(f, "u = {u}, v = {v}"),
            AlgebraWitness::Power { u, a, b } => write!(f, "u = {u}, a = {a}, b = {b}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraIdentityCheck {
    pub identity: AlgebraIdentity,
    pub holds: bool,
    pub witness: Option<AlgebraWitness>,
}

/// All signed two-term combinations `e_i + s e_j`, `i < j`, `s = ±1`.
fn two_term_grid(dim: usize) -> Vec<AlgebraElement> {
    let mut grid = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for s in [1i64, -1] {
                let mut u = AlgebraElement::zero(dim);
                u.coeffs[i] = 1;
                u.coeffs[j] = s;
                grid.push(u);
            }
        }
    }
    grid
}

type Terms = Vec<(usize, i64)>;

fn mul_terms(l: &LoopTable, a: &Terms, b: &Terms) -> Terms {
    let mut out: Terms = Vec::with_capacity(a.len() * b.len());
    for &(i, x) in a {
        for &(j, y) in b {
            out.push((i ^ j, l.basis_sign(i, j) as i64 * x * y));
        }
    }
    out.sort_unstable_by_key(|&(k, _)| k);
    let mut merged: Terms = Vec::with_capacity(out.len());
    for (k, c) in out {
        match merged.last_mut() {
            Some((k0, c0)) if *k0 == k => *c0 += c,
            _ => merged.push((k, c)),
        }
    }
    merged.retain(|&(_, c)| c != 0);
    merged
}

fn to_terms(u: &AlgebraElement) -> Terms {
    u.coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}

/// Linearized flexible law over all basis triples; by bilinearity this
/// certifies `u(vu) = (uv)u` for every element of the algebra.
fn flexible_structure_certificate(l: &LoopTable) -> bool {
    let dim = l.half_order();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let lhs = l.basis_sign(j, k) as i32 * l.basis_sign(i, j ^ k) as i32
                    + l.basis_sign(j, i) as i32 * l.basis_sign(k, j ^ i) as i32;
                let rhs = l.basis_sign(i, j) as i32 * l.basis_sign(i ^ j, k) as i32
                    + l.basis_sign(k, j) as i32 * l.basis_sign(k ^ j, i) as i32;
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks one algebra identity.
///
/// A false result carries an exact witness from the grid. A true result
/// asserts the identity on the grid; for the flexible law it additionally
/// carries the structure-constant certificate over all basis triples, which
/// extends the claim to the whole algebra.
pub fn check_algebra_identity(l: &LoopTable, identity: AlgebraIdentity) -> AlgebraIdentityCheck {
    let grid = two_term_grid(l.half_order());
    match identity {
        AlgebraIdentity::Flexible => {
            for u in &grid {
                let tu = to_terms(u);
                for v in &grid {
                    let tv = to_terms(v);
                    let lhs = mul_terms(l, &tu, &mul_terms(l, &tv, &tu));
                    let rhs = mul_terms(l, &mul_terms(l, &tu, &tv), &tu);
                    if lhs != rhs {
                        return AlgebraIdentityCheck {
                            identity,
                            holds: false,
                            witness: Some(AlgebraWitness::Pair {
                                u: u.clone(),
                                v: v.clone(),
                            }),
                        };
                    }
                }
            }
            let certified = flexible_structure_certificate(l);
            assert!(
                certified,
                "flexible law held on the grid but failed the structure-constant certificate"
            );
            AlgebraIdentityCheck {
                identity,
                holds: true,
                witness: None,
            }
        }
        AlgebraIdentity::LeftAlternative | AlgebraIdentity::RightAlternative => {
            for u in &grid {
                let tu = to_terms(u);
                for v in &grid {
                    let tv = to_terms(v);
                    let (lhs, rhs) = if identity == AlgebraIdentity::LeftAlternative {
                        (
                            mul_terms(l, &tu, &mul_terms(l, &tu, &tv)),
                            mul_terms(l, &mul_terms(l, &tu, &tu), &tv),
                        )
                    } else {
                        (
                            mul_terms(l, &mul_terms(l, &tu, &tv), &tv),
                            mul_terms(l, &tu, &mul_terms(l, &tv, &tv)),
                        )
                    };
                    if lhs != rhs {
                        return AlgebraIdentityCheck {
                            identity,
                            holds: false,
                            witness: Some(AlgebraWitness::Pair {
                                u: u.clone(),
                                v: v.clone(),
                            }),
                        };
                    }
                }
            }
            AlgebraIdentityCheck {
                identity,
                holds: true,
                witness: None,
            }
        }
        AlgebraIdentity::PowerAssociative => {
            for u in &grid {
                // left-associated powers u^1 .. u^4
                let mut powers = vec![u.clone()];
                for _ in 1..4 {
                    let next = alg_multiply(powers.last().unwrap(), u, l).expect("dims match");
                    powers.push(next);
                }
                for a in 1usize..=3 {
                    for b in 1usize..=(4 - a) {
                        let product =
                            alg_multiply(&powers[a - 1], &powers[b - 1], l).expect("dims match");
                        if product != powers[a + b - 1] {
                            return AlgebraIdentityCheck {
                                identity,
                                holds: false,
                                witness: Some(AlgebraWitness::Power {
                                    u: u.clone(),
                                    a: a as u32,
                                    b: b as u32,
                                }),
                            };
                        }
                    }
                }
            }
            AlgebraIdentityCheck {
                identity,
                holds: true,
                witness: None,
            }
        }
    }
}

/// Basis index set of the subalgebra generated by a subloop; its dimension
/// is half the subloop order (or 1 for the trivial subloop).
pub fn subalgebra_basis(s: &Subloop) -> Vec<usize> {
    s.support_indices()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_cd_loop;
    use proptest::prelude::*;

    #[test]
    fn unit_acts_as_identity() {
        let l = build_cd_loop(3).unwrap();
        let e0 = AlgebraElement::basis(0, 8);
        let v = AlgebraElement::from_coeffs(vec![3, -1, 0, 4, 0, 0, 2, -5]);
        assert_eq!(alg_multiply(&e0, &v, &l).unwrap(), v);
        assert_eq!(alg_multiply(&v, &e0, &l).unwrap(), v);
    }

    #[test]
    fn basis_products_match_the_loop_table() {
        for level in 0..=4 {
            let l = build_cd_loop(level).unwrap();
            let dim = l.half_order();
            for i in 0..dim {
                for j in 0..dim {
                    let prod = alg_multiply(
                        &AlgebraElement::basis(i, dim),
                        &AlgebraElement::basis(j, dim),
                        &l,
                    )
                    .unwrap();
                    let mut expected = AlgebraElement::zero(dim);
                    expected.coeffs[i ^ j] = l.basis_sign(i, j) as i64;
                    assert_eq!(prod, expected);
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let e0 = AlgebraElement::basis(0, 16);
        assert_eq!(conjugate(&e0), e0);
        let e5 = AlgebraElement::basis(5, 16);
        assert_eq!(conjugate(&e5), e5.neg());
        let u = AlgebraElement::from_coeffs((0..16).map(|i| i as i64 - 7).collect());
        assert_eq!(conjugate(&conjugate(&u)), u);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_sq(&AlgebraElement::basis(3, 8)), 1);
        let mut u = AlgebraElement::zero(16);
        u.coeffs[1] = 1;
        u.coeffs[10] = 1;
        assert_eq!(norm_sq(&u), 2);
        assert_eq!(norm_sq(&AlgebraElement::zero(4)), 0);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let l = build_cd_loop(3).unwrap();
        let u = AlgebraElement::zero(4);
        let v = AlgebraElement::zero(8);
        assert_eq!(
            alg_multiply(&u, &v, &l),
            Err(LoopError::DimensionMismatch {
                got: 4,
                expected: 8
            })
        );
    }

    #[test]
    fn octonions_have_no_two_term_zero_divisors() {
        let l = build_cd_loop(3).unwrap();
        assert!(find_zero_divisor(&l, 0xff).is_none());
    }

    #[test]
    fn sedenions_have_zero_divisors() {
        let l = build_cd_loop(4).unwrap();
        let pair = find_zero_divisor(&l, 0xffff).expect("sedenion zero divisor exists");
        assert!(norm_sq(&pair.u) > 0);
        assert!(norm_sq(&pair.v) > 0);
        let product = alg_multiply(&pair.u, &pair.v, &l).unwrap();
        assert_eq!(norm_sq(&product), 0);
    }

    #[test]
    fn division_algebra_norm_composition() {
        // u * conj(u) = norm_sq(u) e_0 on division-algebra supports
        for level in 0..=3 {
            let l = build_cd_loop(level).unwrap();
            let dim = l.half_order();
            for u in two_term_grid(dim) {
                let product = alg_multiply(&u, &conjugate(&u), &l).unwrap();
                let mut expected = AlgebraElement::zero(dim);
                expected.coeffs[0] = norm_sq(&u) as i64;
                assert_eq!(product, expected, "u = {u}");
            }
        }
    }

    #[test]
    fn quaternion_algebra_identities() {
        let l = build_cd_loop(2).unwrap();
        for id in [
            AlgebraIdentity::Flexible,
            AlgebraIdentity::LeftAlternative,
            AlgebraIdentity::RightAlternative,
            AlgebraIdentity::PowerAssociative,
        ] {
            assert!(check_algebra_identity(&l, id).holds, "{}", id.as_str());
        }
    }

    #[test]
    fn sedenion_algebra_is_flexible_but_not_alternative() {
        let l = build_cd_loop(4).unwrap();
        assert!(check_algebra_identity(&l, AlgebraIdentity::Flexible).holds);
        let left = check_algebra_identity(&l, AlgebraIdentity::LeftAlternative);
        assert!(!left.holds);
        assert!(left.witness.is_some());
        assert!(check_algebra_identity(&l, AlgebraIdentity::PowerAssociative).holds);
    }

    #[test]
    fn octonion_algebra_is_alternative_on_the_grid() {
        let l = build_cd_loop(3).unwrap();
        assert!(check_algebra_identity(&l, AlgebraIdentity::LeftAlternative).holds);
        assert!(check_algebra_identity(&l, AlgebraIdentity::RightAlternative).holds);
    }

    proptest! {
        #[test]
        fn bilinearity(
            a in proptest::collection::vec(-50i64..50, 8),
            b in proptest::collection::vec(-50i64..50, 8),
            c in proptest::collection::vec(-50i64..50, 8),
        ) {
            let l = build_cd_loop(3).unwrap();
            let (a, b, c) = (
                AlgebraElement::from_coeffs(a),
                AlgebraElement::from_coeffs(b),
                AlgebraElement::from_coeffs(c),
            );
            let left = alg_multiply(&a.add(&b), &c, &l).unwrap();
            let right = alg_multiply(&a, &c, &l).unwrap().add(&alg_multiply(&b, &c, &l).unwrap());
            prop_assert_eq!(left, right);
            let left = alg_multiply(&c, &a.add(&b), &l).unwrap();
            let right = alg_multiply(&c, &a, &l).unwrap().add(&alg_multiply(&c, &b, &l).unwrap());
            prop_assert_eq!(left, right);
        }
    }
}
