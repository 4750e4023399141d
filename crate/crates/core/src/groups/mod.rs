//! Finitely generated groups with symmetric generating sets.
//!
//! Every element has a canonical normal form, so equality of elements is
//! structural equality of [`GroupElement`] values.
//!
//! | family            | spec string    | generators (declaration order)   |
//! |-------------------|----------------|----------------------------------|
//! | `ℤ^d`             | `z:d`          | `+e1, −e1, +e2, −e2, …`          |
//! | free group `F_k`  | `free:k`       | `a, A, b, B, …` (capital = inverse) |
//! | direct product    | `prod(A,B)`    | `A`'s generators, then `B`'s     |
//! | lamplighter `ℤ₂≀ℤ`| `lamplighter`  | `t, T, a` (`a` is an involution) |

mod ball;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use ball::{act, BallRecord, CayleyBall, DEFAULT_VERTEX_BUDGET};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    FreeAbelian(usize),
    Free(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Lamplighter,
}

/// Letters of a free-group word: `+i` is the `i`-th generator (1-based),
/// `-i` its inverse.
pub type Letter = i32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Vector(Vec<i64>),
    Word(Vec<Letter>),
    Pair(Box<GroupElement>, Box<GroupElement>),
    /// Lamplighter element: set of lit lamps and the lamplighter position.
    /// Multiplication is `(f, n)(g, m) = (f Δ (g + n), n + m)`.
    Lamps {
        lit: BTreeSet<i64>,
        pos: i64,
    },
}

impl GroupSpec {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::FreeAbelian(d) => GroupElement::Vector(vec![0; *d]),
            GroupSpec::Free(_) => GroupElement::Word(Vec::new()),
            GroupSpec::Product(a, b) => GroupElement::Pair(Box::new(a.identity()), Box::new(b.identity())),
            GroupSpec::Lamplighter => GroupElement::Lamps { lit: BTreeSet::new(), pos: 0 },
        }
    }

    /// The symmetric generating set in declaration order.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupSpec::FreeAbelian(d) => (0..*d)
                .flat_map(|i| {
                    [1i64, -1].map(|sign| {
                        let mut v = vec![0; *d];
                        v[i] = sign;
                        GroupElement::Vector(v)
                    })
                })
                .collect(),
            GroupSpec::Free(k) => {
                (1..=*k as Letter).flat_map(|i| [GroupElement::Word(vec![i]), GroupElement::Word(vec![-i])]).collect()
            }
            GroupSpec::Product(a, b) => {
                let (ea, eb) = (a.identity(), b.identity());
                a.generators()
                    .into_iter()
                    .map(|s| GroupElement::Pair(Box::new(s), Box::new(eb.clone())))
                    .chain(b.generators().into_iter().map(|t| GroupElement::Pair(Box::new(ea.clone()), Box::new(t))))
                    .collect()
            }
            GroupSpec::Lamplighter => vec![
                GroupElement::Lamps { lit: BTreeSet::new(), pos: 1 },
                GroupElement::Lamps { lit: BTreeSet::new(), pos: -1 },
                GroupElement::Lamps { lit: BTreeSet::from([0]), pos: 0 },
            ],
        }
    }

    /// Whether `g` has the shape of an element of this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupSpec::FreeAbelian(d), GroupElement::Vector(v)) => v.len() == *d,
            (GroupSpec::Free(k), GroupElement::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *k) && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupSpec::Product(a, b), GroupElement::Pair(x, y)) => a.contains(x) && b.contains(y),
            (GroupSpec::Lamplighter, GroupElement::Lamps { .. }) => true,
            _ => false,
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match (self, g, h) {
            (GroupSpec::FreeAbelian(_), GroupElement::Vector(a), GroupElement::Vector(b)) => {
                GroupElement::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupSpec::Free(_), GroupElement::Word(a), GroupElement::Word(b)) => {
                let mut w = a.clone();
                for &l in b {
                    if w.last() == Some(&-l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                GroupElement::Word(w)
            }
            (GroupSpec::Product(sa, sb), GroupElement::Pair(a1, b1), GroupElement::Pair(a2, b2)) => {
                GroupElement::Pair(Box::new(sa.mul(a1, a2)), Box::new(sb.mul(b1, b2)))
            }
            (
                GroupSpec::Lamplighter,
                GroupElement::Lamps { lit: f, pos: n },
                GroupElement::Lamps { lit: g, pos: m },
            ) => {
                let shifted: BTreeSet<i64> = g.iter().map(|x| x + n).collect();
                GroupElement::Lamps { lit: f.symmetric_difference(&shifted).copied().collect(), pos: n + m }
            }
            _ => panic!("element does not belong to group {self}"),
        }
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        match (self, g) {
            (GroupSpec::FreeAbelian(_), GroupElement::Vector(a)) => {
                GroupElement::Vector(a.iter().map(|x| -x).collect())
            }
            (GroupSpec::Free(_), GroupElement::Word(w)) => GroupElement::Word(w.iter().rev().map(|l| -l).collect()),
            (GroupSpec::Product(sa, sb), GroupElement::Pair(a, b)) => {
                GroupElement::Pair(Box::new(sa.inv(a)), Box::new(sb.inv(b)))
            }
            (GroupSpec::Lamplighter, GroupElement::Lamps { lit, pos }) => {
                GroupElement::Lamps { lit: lit.iter().map(|x| x - pos).collect(), pos: -pos }
            }
            _ => panic!("element does not belong to group {self}"),
        }
    }

    /// Product of generators `S[w_0] S[w_1] …` (indices into [`GroupSpec::generators`]).
    pub fn word(&self, letters: &[usize]) -> Result<GroupElement> {
        let gens = self.generators();
        letters.iter().try_fold(self.identity(), |acc, &i| {
            let s = gens.get(i).ok_or_else(|| Error::Argument(format!("generator index {i} out of range")))?;
            Ok(self.mul(&acc, s))
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::FreeAbelian(d) => write!(f, "z:{d}"),
            GroupSpec::Free(k) => write!(f, "free:{k}"),
            GroupSpec::Product(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::Lamplighter => write!(f, "lamplighter"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Argument(format!("unrecognized group spec '{s}'"));
        if s == "lamplighter" {
            return Ok(GroupSpec::Lamplighter);
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0i32;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        let a: GroupSpec = inner[..i].parse()?;
                        let b: GroupSpec = inner[i + 1..].parse()?;
                        return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
                    }
                    _ => {}
                }
            }
            return Err(bad());
        }
        let (family, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(Error::Argument(format!("group spec '{s}' needs a positive rank")));
        }
        match family.trim() {
            "z" => Ok(GroupSpec::FreeAbelian(n)),
            "free" if n <= 26 => Ok(GroupSpec::Free(n)),
            "free" => Err(Error::Argument("free groups are limited to 26 generators".into())),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Word(w) if w.is_empty() => write!(f, "e"),
            GroupElement::Word(w) => {
                for &l in w {
                    let base = if l > 0 { b'a' } else { b'A' };
                    write!(f, "{}", (base + (l.unsigned_abs() - 1) as u8) as char)?;
                }
                Ok(())
            }
            GroupElement::Pair(a, b) => write!(f, "<{a}|{b}>"),
            GroupElement::Lamps { lit, pos } => {
                write!(f, "{{")?;
                for (i, x) in lit.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "}}@{pos}")
            }
        }
    }
}
