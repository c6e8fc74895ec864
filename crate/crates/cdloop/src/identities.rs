//! Exhaustive loop-identity battery.
//!
//! Each identity is a universally quantified equation checked over every
//! tuple of the required arity. A failing identity always carries a witness
//! tuple that re-evaluates to a genuine violation; witnesses are reported in
//! element labels (parent codes for extracted subloops).

use std::fmt;

use serde::Serialize;

use crate::table::{inverse_vector, CayleyTable};

/// PAP exponents are checked for all `a, b` in `1..=PAP_EXPONENT_BOUND`.
/// Element orders in signed basis loops divide 4, so 8 covers every residue
/// twice.
pub const PAP_EXPONENT_BOUND: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IdentityName {
    /// `inv(x)(xy) = y` and `(yx)inv(x) = y`.
    Ip,
    /// `x(xy) = (xx)y`.
    ApLeft,
    /// `(xy)y = x(yy)`.
    ApRight,
    /// `x(yx) = (xy)x`.
    Fl,
    /// `x(y(yz)) = ((xy)y)z`.
    Cp,
    /// `x^a x^b = x^(a+b)` with left-associated powers.
    Pap,
    /// `x inv(yx) = inv(y)`.
    Wip,
    /// `inv(xy) = inv(y) inv(x)`.
    Aaip,
    /// `(xy)(zx) = x((yz)x)`.
    Moufang,
    /// `xy = yx`.
    Comm,
    /// `(xy)z = x(yz)`.
    Assoc,
}

impl IdentityName {
    pub const ALL: [IdentityName; 11] = [
        IdentityName::Ip,
        IdentityName::ApLeft,
        IdentityName::ApRight,
        IdentityName::Fl,
        IdentityName::Cp,
        IdentityName::Pap,
        IdentityName::Wip,
        IdentityName::Aaip,
        IdentityName::Moufang,
        IdentityName::Comm,
        IdentityName::Assoc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::Ip => "IP",
            IdentityName::ApLeft => "AP_left",
            IdentityName::ApRight => "AP_right",
            IdentityName::Fl => "FL",
            IdentityName::Cp => "CP",
            IdentityName::Pap => "PAP",
            IdentityName::Wip => "WIP",
            IdentityName::Aaip => "AAIP",
            IdentityName::Moufang => "MOUFANG",
            IdentityName::Comm => "COMM",
            IdentityName::Assoc => "ASSOC",
        }
    }

    pub fn from_str_name(name: &str) -> Option<IdentityName> {
        IdentityName::ALL.into_iter().find(|i| i.as_str() == name)
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of checking one identity.
///
/// For PAP the witness is `[x, a, b]` with the exponents in place of
/// element labels; for everything else it is the violating element tuple.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Option<Vec<u16>>,
}

impl IdentityCheck {
    fn holds(name: IdentityName) -> Self {
        IdentityCheck {
            name: name.as_str().to_string(),
            holds: true,
            witness: None,
        }
    }

    fn fails(name: IdentityName, witness: Vec<u16>) -> Self {
        IdentityCheck {
            name: name.as_str().to_string(),
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Results for the whole battery, in [`IdentityName::ALL`] order.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub entries: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn holds(&self, name: IdentityName) -> bool {
        self.entries
            .iter()
            .find(|e| e.name == name.as_str())
            .is_some_and(|e| e.holds)
    }

    pub fn to_json(&self) -> String {
        let map: std::collections::BTreeMap<&str, serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                (
                    e.name.as_str(),
                    serde_json::json!({ "holds": e.holds, "witness": e.witness }),
                )
            })
            .collect();
        serde_json::to_string(&map).expect("identity report serializes")
    }
}

fn labels(t: &impl CayleyTable, idxs: &[usize]) -> Vec<u16> {
    idxs.iter().map(|&i| t.label_of(i)).collect()
}

/// Left-associated powers `x^1 .. x^max`.
fn powers(t: &impl CayleyTable, x: usize, max: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(max);
    let mut p = x;
    for _ in 0..max {
        out.push(p);
        p = t.mul_idx(p, x);
    }
    out
}

fn check_two_var(
    t: &impl CayleyTable,
    name: IdentityName,
    eq: impl Fn(usize, usize) -> bool,
) -> IdentityCheck {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            if !eq(x, y) {
                return IdentityCheck::fails(name, labels(t, &[x, y]));
            }
        }
    }
    IdentityCheck::holds(name)
}

fn check_three_var(
    t: &impl CayleyTable,
    name: IdentityName,
    eq: impl Fn(usize, usize, usize) -> bool,
) -> IdentityCheck {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !eq(x, y, z) {
                    return IdentityCheck::fails(name, labels(t, &[x, y, z]));
                }
            }
        }
    }
    IdentityCheck::holds(name)
}

/// Identities that involve inverses fail outright on a table without
/// two-sided inverses, with the offending element as witness.
fn with_inverses(
    t: &impl CayleyTable,
    name: IdentityName,
    run: impl Fn(&[usize]) -> IdentityCheck,
) -> IdentityCheck {
    match inverse_vector(t) {
        Ok(inv) => run(&inv),
        Err(crate::LoopError::AsymmetricInverse { element }) => {
            IdentityCheck::fails(name, vec![element])
        }
        Err(_) => unreachable!("inverse_vector only reports asymmetric inverses"),
    }
}

/// Checks one identity exhaustively.
pub fn check_identity(t: &impl CayleyTable, name: IdentityName) -> IdentityCheck {
    match name {
        IdentityName::Ip => with_inverses(t, name, |inv| {
            check_two_var(t, name, |x, y| {
                t.mul_idx(inv[x], t.mul_idx(x, y)) == y && t.mul_idx(t.mul_idx(y, x), inv[x]) == y
            })
        }),
        IdentityName::ApLeft => check_two_var(t, name, |x, y| {
            t.mul_idx(x, t.mul_idx(x, y)) == t.mul_idx(t.mul_idx(x, x), y)
        }),
        IdentityName::ApRight => check_two_var(t, name, |x, y| {
            t.mul_idx(t.mul_idx(x, y), y) == t.mul_idx(x, t.mul_idx(y, y))
        }),
        IdentityName::Fl => check_two_var(t, name, |x, y| {
            t.mul_idx(x, t.mul_idx(y, x)) == t.mul_idx(t.mul_idx(x, y), x)
        }),
        IdentityName::Cp => check_three_var(t, name, |x, y, z| {
            t.mul_idx(x, t.mul_idx(y, t.mul_idx(y, z)))
                == t.mul_idx(t.mul_idx(t.mul_idx(x, y), y), z)
        }),
        IdentityName::Pap => {
            let n = t.order();
            let e = t.identity_idx();
            for x in 0..n {
                let p = powers(t, x, 2 * PAP_EXPONENT_BOUND);
                let at = |k: usize| if k == 0 { e } else { p[k - 1] };
                for a in 1..=PAP_EXPONENT_BOUND {
                    for b in 1..=PAP_EXPONENT_BOUND {
                        if t.mul_idx(at(a), at(b)) != at(a + b) {
                            return IdentityCheck::fails(
                                name,
                                vec![t.label_of(x), a as u16, b as u16],
                            );
                        }
                    }
                }
            }
            IdentityCheck::holds(name)
        }
        IdentityName::Wip => with_inverses(t, name, |inv| {
            check_two_var(t, name, |x, y| {
                t.mul_idx(x, inv[t.mul_idx(y, x)]) == inv[y]
            })
        }),
        IdentityName::Aaip => with_inverses(t, name, |inv| {
            check_two_var(t, name, |x, y| {
                inv[t.mul_idx(x, y)] == t.mul_idx(inv[y], inv[x])
            })
        }),
        IdentityName::Moufang => check_three_var(t, name, |x, y, z| {
            t.mul_idx(t.mul_idx(x, y), t.mul_idx(z, x))
                == t.mul_idx(x, t.mul_idx(t.mul_idx(y, z), x))
        }),
        IdentityName::Comm => check_two_var(t, name, |x, y| t.mul_idx(x, y) == t.mul_idx(y, x)),
        IdentityName::Assoc => check_three_var(t, name, |x, y, z| {
            t.mul_idx(t.mul_idx(x, y), z) == t.mul_idx(x, t.mul_idx(y, z))
        }),
    }
}

/// Runs the full battery in a fixed order.
pub fn identity_report(t: &impl CayleyTable) -> IdentityReport {
    IdentityReport {
        entries: IdentityName::ALL
            .into_iter()
            .map(|name| check_identity(t, name))
            .collect(),
    }
}

/// Re-evaluates a reported witness; true means the violation is genuine.
/// Labels are resolved back to indices, so this works for extracted tables.
pub fn witness_violates(t: &impl CayleyTable, name: IdentityName, witness: &[u16]) -> bool {
    let index_of = |label: u16| (0..t.order()).find(|&i| t.label_of(i) == label);
    let resolve = |labels: &[u16]| -> Option<Vec<usize>> {
        labels.iter().map(|&l| index_of(l)).collect()
    };
    match name {
        IdentityName::Pap => {
            let Some(x) = index_of(witness[0]) else {
                return false;
            };
            let (a, b) = (witness[1] as usize, witness[2] as usize);
            let p = powers(t, x, a + b);
            t.mul_idx(p[a - 1], p[b - 1]) != p[a + b - 1]
        }
        IdentityName::Ip | IdentityName::Wip | IdentityName::Aaip => {
            let Ok(inv) = inverse_vector(t) else {
                // asymmetric-inverse witness: a single element
                return witness.len() == 1;
            };
            let Some(w) = resolve(witness) else {
                return false;
            };
            match name {
                IdentityName::Ip => {
                    let (x, y) = (w[0], w[1]);
                    t.mul_idx(inv[x], t.mul_idx(x, y)) != y
                        || t.mul_idx(t.mul_idx(y, x), inv[x]) != y
                }
                IdentityName::Wip => {
                    let (x, y) = (w[0], w[1]);
                    t.mul_idx(x, inv[t.mul_idx(y, x)]) != inv[y]
                }
                IdentityName::Aaip => {
                    let (x, y) = (w[0], w[1]);
                    inv[t.mul_idx(x, y)] != t.mul_idx(inv[y], inv[x])
                }
                _ => unreachable!(),
            }
        }
        _ => {
            let Some(w) = resolve(witness) else {
                return false;
            };
            match name {
                IdentityName::ApLeft => {
                    t.mul_idx(w[0], t.mul_idx(w[0], w[1]))
                        != t.mul_idx(t.mul_idx(w[0], w[0]), w[1])
                }
                IdentityName::ApRight => {
                    t.mul_idx(t.mul_idx(w[0], w[1]), w[1])
                        != t.mul_idx(w[0], t.mul_idx(w[1], w[1]))
                }
                IdentityName::Fl => {
                    t.mul_idx(w[0], t.mul_idx(w[1], w[0]))
                        != t.mul_idx(t.mul_idx(w[0], w[1]), w[0])
                }
                IdentityName::Cp => {
                    t.mul_idx(w[0], t.mul_idx(w[1], t.mul_idx(w[1], w[2])))
                        != t.mul_idx(t.mul_idx(t.mul_idx(w[0], w[1]), w[1]), w[2])
                }
                IdentityName::Moufang => {
                    t.mul_idx(t.mul_idx(w[0], w[1]), t.mul_idx(w[2], w[0]))
                        != t.mul_idx(w[0], t.mul_idx(t.mul_idx(w[1], w[2]), w[0]))
                }
                IdentityName::Comm => t.mul_idx(w[0], w[1]) != t.mul_idx(w[1], w[0]),
                IdentityName::Assoc => {
                    t.mul_idx(t.mul_idx(w[0], w[1]), w[2])
                        != t.mul_idx(w[0], t.mul_idx(w[1], w[2]))
                }
                _ => unreachable!(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_cd_loop;

    fn holding(report: &IdentityReport) -> Vec<&str> {
        report
            .entries
            .iter()
            .filter(|e| e.holds)
            .map(|e| e.name.as_str())
            .collect()
    }

    #[test]
    fn trigintaduonion_loop_battery() {
        let l = build_cd_loop(5).unwrap();
        let report = identity_report(&l);
        assert_eq!(
            holding(&report),
            vec!["IP", "AP_left", "AP_right", "FL", "CP", "PAP", "WIP", "AAIP"]
        );
        for name in [IdentityName::Moufang, IdentityName::Comm, IdentityName::Assoc] {
            let entry = check_identity(&l, name);
            assert!(!entry.holds);
            assert!(witness_violates(&l, name, entry.witness.as_ref().unwrap()));
        }
    }

    #[test]
    fn quaternion_loop_battery() {
        let l = build_cd_loop(2).unwrap();
        let report = identity_report(&l);
        for entry in &report.entries {
            if entry.name == "COMM" {
                assert!(!entry.holds);
            } else {
                assert!(entry.holds, "{} should hold on Q8", entry.name);
            }
        }
    }

    #[test]
    fn cyclic_loop_battery() {
        let l = build_cd_loop(1).unwrap();
        let report = identity_report(&l);
        assert!(report.entries.iter().all(|e| e.holds));
    }

    #[test]
    fn octonion_loop_is_moufang() {
        let l = build_cd_loop(3).unwrap();
        assert!(check_identity(&l, IdentityName::Moufang).holds);
        assert!(!check_identity(&l, IdentityName::Assoc).holds);
    }

    #[test]
    fn moufang_implies_flexible_and_alternative() {
        for level in 0..=4 {
            let l = build_cd_loop(level).unwrap();
            let report = identity_report(&l);
            if report.holds(IdentityName::Moufang) {
                assert!(report.holds(IdentityName::Fl));
                assert!(report.holds(IdentityName::ApLeft));
                assert!(report.holds(IdentityName::ApRight));
            }
        }
    }

    #[test]
    fn json_shape() {
        let l = build_cd_loop(0).unwrap();
        let json = identity_report(&l).to_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["MOUFANG"]["holds"], serde_json::json!(true));
        assert_eq!(parsed["MOUFANG"]["witness"], serde_json::Value::Null);
    }
}
