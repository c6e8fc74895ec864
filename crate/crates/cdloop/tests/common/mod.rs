//! Independent oracles used by the integration tests.
//!
//! Everything here recomputes results along a route disjoint from the
//! library's implementation: the doubling product works on dense
//! coefficient vectors with no sign function, and the Hasse oracle works on
//! raw element sets with no support arithmetic.

/// Conjugation on a dense coefficient vector.
pub fn conj(v: &[i64]) -> Vec<i64> {
    let mut out = v.to_vec();
    for c in out.iter_mut().skip(1) {
        *c = -*c;
    }
    out
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Symbolic Cayley-Dickson product on dense vectors:
/// `(a, b)(c, d) = (ac - conj(d) b, da + b conj(c))`, recursing on halves.
pub fn cd_mul(u: &[i64], v: &[i64]) -> Vec<i64> {
    let n = u.len();
    assert_eq!(n, v.len());
    if n == 1 {
        return vec![u[0] * v[0]];
    }
    let h = n / 2;
    let (a, b) = u.split_at(h);
    let (c, d) = v.split_at(h);
    let first = sub(&cd_mul(a, c), &cd_mul(&conj(d), b));
    let second = add(&cd_mul(d, a), &cd_mul(b, &conj(c)));
    [first, second].concat()
}

/// Dense basis vector.
pub fn basis_vec(i: usize, dim: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Brute-force Hasse diagram over arbitrary element sets: covers are the
/// strict inclusions with no set strictly between.
pub fn brute_hasse(sets: &[u128]) -> Vec<(usize, usize)> {
    let n = sets.len();
    let strictly_below =
        |a: usize, b: usize| sets[a] != sets[b] && sets[a] & !sets[b] == 0;
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !strictly_below(i, j) {
                continue;
            }
            if !(0..n).any(|k| strictly_below(i, k) && strictly_below(k, j)) {
                covers.push((i, j));
            }
        }
    }
    covers.sort_unstable();
    covers
}

/// Longest path length in a DAG given by cover edges.
pub fn longest_chain(n: usize, covers: &[(usize, usize)]) -> usize {
    fn depth(node: usize, covers: &[(usize, usize)], memo: &mut [Option<usize>]) -> usize {
        if let Some(d) = memo[node] {
            return d;
        }
        let d = covers
            .iter()
            .filter(|&&(lo, _)| lo == node)
            .map(|&(_, hi)| 1 + depth(hi, covers, memo))
            .max()
            .unwrap_or(0);
        memo[node] = Some(d);
        d
    }
    let mut memo = vec![None; n];
    (0..n)
        .map(|i| depth(i, covers, &mut memo))
        .max()
        .unwrap_or(0)
}
