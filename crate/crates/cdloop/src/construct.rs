//! Cayley-Dickson construction of the signed basis loop.
//!
//! The doubling product on pairs is fixed as
//! `(a, b)(c, d) = (ac - conj(d) b, da + b conj(c))` with `conj(e_0) = e_0`
//! and `conj(e_i) = -e_i` for `i >= 1`. Writing a level-`n` basis element
//! `e_i` as a pair over level `n - 1` (low half `(e_i, 0)`, high half
//! `(0, e_{i - H})` with `H = 2^{n-1}`) and expanding the four index cases
//! gives the sign recursion implemented here. The product index is always
//! `i XOR j`; only the sign needs the recursion.

use crate::element::SignedIndex;
use crate::error::LoopError;
use crate::table::LoopTable;

/// Largest doubling level `build_cd_loop` accepts. Levels above 5 build
/// fine but the structural results are only exercised up to order 64.
pub const MAX_LEVEL: u32 = 10;

fn conj_sign(index: usize) -> i8 {
    if index == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the basis product `e_i * e_j` at the given doubling level.
///
/// Callers must have validated `i, j < 2^level`.
pub fn basis_sign(i: usize, j: usize, level: u32) -> i8 {
    if level == 0 {
        return 1;
    }
    let half = 1usize << (level - 1);
    let (i_hi, i_lo) = (i >= half, i & (half - 1));
    let (j_hi, j_lo) = (j >= half, j & (half - 1));
    match (i_hi, j_hi) {
        // (e_i, 0)(e_j, 0) = (e_i e_j, 0)
        (false, false) => basis_sign(i_lo, j_lo, level - 1),
        // (e_i, 0)(0, e_j') = (0, e_j' e_i)
        (false, true) => basis_sign(j_lo, i_lo, level - 1),
        // (0, e_i')(e_j, 0) = (0, e_i' conj(e_j))
        (true, false) => conj_sign(j_lo) * basis_sign(i_lo, j_lo, level - 1),
        // (0, e_i')(0, e_j') = (-conj(e_j') e_i', 0)
        (true, true) => -conj_sign(j_lo) * basis_sign(j_lo, i_lo, level - 1),
    }
}

/// Product of two positive basis elements: sign and result index.
///
/// The result index is `i XOR j`; the sign follows the doubling recursion.
///
/// ```
/// // e_1 e_2 = e_3 in the quaternions
/// assert_eq!(cdloop::multiply_basis(1, 2, 2).unwrap(), (1, 3));
/// // every imaginary squares to -e_0
/// assert_eq!(cdloop::multiply_basis(5, 5, 3).unwrap(), (-1, 0));
/// ```
pub fn multiply_basis(i: usize, j: usize, level: u32) -> Result<(i8, usize), LoopError> {
    if level > MAX_LEVEL {
        return Err(LoopError::LevelTooLarge {
            level,
            max: MAX_LEVEL,
        });
    }
    let dim = 1usize << level;
    for index in [i, j] {
        if index >= dim {
            return Err(LoopError::BasisIndexOutOfRange { index, level });
        }
    }
    Ok((basis_sign(i, j, level), i ^ j))
}

/// Builds the full signed basis loop of order `2^(level+1)`.
///
/// The table combines the basis signs with the rule
/// `(-e_i)(e_j) = (e_i)(-e_j) = -(e_i e_j)`, memoized row-major so that all
/// downstream searches are plain lookups.
pub fn build_cd_loop(level: u32) -> Result<LoopTable, LoopError> {
    if level > MAX_LEVEL {
        return Err(LoopError::LevelTooLarge {
            level,
            max: MAX_LEVEL,
        });
    }
    let half = 1usize << level;
    let order = 2 * half;

    let mut signs = vec![0i8; half * half];
    for i in 0..half {
        for j in 0..half {
            signs[i * half + j] = basis_sign(i, j, level);
        }
    }

    let mut table = vec![SignedIndex::default(); order * order];
    for a in 0..order {
        let (ia, sa) = (a % half, if a < half { 1i8 } else { -1 });
        for b in 0..order {
            let (ib, sb) = (b % half, if b < half { 1i8 } else { -1 });
            let sign = sa * sb * signs[ia * half + ib];
            let index = ia ^ ib;
            let code = if sign > 0 { index } else { index + half };
            table[a * order + b] = SignedIndex::from_code(code as u16);
        }
    }

    Ok(LoopTable::from_parts(level, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_element() {
        for level in 0..=5 {
            let dim = 1usize << level;
            for j in 0..dim {
                assert_eq!(multiply_basis(0, j, level).unwrap(), (1, j));
                assert_eq!(multiply_basis(j, 0, level).unwrap(), (1, j));
            }
        }
    }

    #[test]
    fn imaginaries_square_to_minus_one() {
        for level in 1..=5 {
            for i in 1..(1usize << level) {
                assert_eq!(multiply_basis(i, i, level).unwrap(), (-1, 0));
            }
        }
    }

    #[test]
    fn normalization_pins_the_convention() {
        // quaternion triple
        assert_eq!(multiply_basis(1, 2, 2).unwrap(), (1, 3));
        // octonion doubling row
        assert_eq!(multiply_basis(1, 4, 3).unwrap(), (1, 5));
        assert_eq!(multiply_basis(2, 4, 3).unwrap(), (1, 6));
        assert_eq!(multiply_basis(3, 4, 3).unwrap(), (1, 7));
    }

    #[test]
    fn quaternion_table_is_the_standard_one() {
        // e1 = i, e2 = j, e3 = k
        let cases = [
            ((1, 2), (1, 3)),
            ((2, 3), (1, 1)),
            ((3, 1), (1, 2)),
            ((2, 1), (-1, 3)),
            ((3, 2), (-1, 1)),
            ((1, 3), (-1, 2)),
        ];
        for ((i, j), expected) in cases {
            assert_eq!(multiply_basis(i, j, 2).unwrap(), expected);
        }
    }

    #[test]
    fn anticommutativity_of_distinct_imaginaries() {
        for level in 1..=5 {
            let dim = 1usize << level;
            for i in 1..dim {
                for j in 1..dim {
                    if i == j {
                        continue;
                    }
                    let (si, k) = multiply_basis(i, j, level).unwrap();
                    let (sj, k2) = multiply_basis(j, i, level).unwrap();
                    assert_eq!(k, k2);
                    assert_eq!(si, -sj, "e{i} e{j} at level {level}");
                }
            }
        }
    }

    #[test]
    fn level_embedding() {
        for level in 1..=6 {
            let dim = 1usize << (level - 1);
            for i in 0..dim {
                for j in 0..dim {
                    assert_eq!(
                        multiply_basis(i, j, level).unwrap(),
                        multiply_basis(i, j, level - 1).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert_eq!(
            multiply_basis(4, 0, 2),
            Err(LoopError::BasisIndexOutOfRange { index: 4, level: 2 })
        );
        assert_eq!(
            multiply_basis(0, 9, 3),
            Err(LoopError::BasisIndexOutOfRange { index: 9, level: 3 })
        );
        assert!(matches!(
            build_cd_loop(MAX_LEVEL + 1),
            Err(LoopError::LevelTooLarge { .. })
        ));
    }

    #[test]
    fn small_orders() {
        assert_eq!(build_cd_loop(0).unwrap().order(), 2);
        assert_eq!(build_cd_loop(3).unwrap().order(), 16);
        assert_eq!(build_cd_loop(5).unwrap().order(), 64);
    }
}
