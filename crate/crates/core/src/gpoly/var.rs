use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::coeff::RingParams;

/// Variable families, in ranking order: `v < V < t (slot 0) < t' < t'' < x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Araki generators `v_i`.
    Araki,
    /// Hazewinkel generators `V_i`.
    Hazewinkel,
    T0,
    T1,
    T2,
    /// Auxiliary variables with caller-declared degree.
    X,
}

impl Family {
    pub fn t(slot: u8) -> Family {
        match slot {
            0 => Family::T0,
            1 => Family::T1,
            2 => Family::T2,
            _ => panic!("tensor slot {slot} out of range"),
        }
    }

    pub fn slot(self) -> Option<u8> {
        match self {
            Family::T0 => Some(0),
            Family::T1 => Some(1),
            Family::T2 => Some(2),
            _ => None,
        }
    }

    pub fn is_generator(self) -> bool {
        matches!(self, Family::Araki | Family::Hazewinkel)
    }

    pub fn code(self) -> &'static str {
        match self {
            Family::Araki => "v",
            Family::Hazewinkel => "V",
            Family::T0 | Family::T1 | Family::T2 => "t",
            Family::X => "x",
        }
    }
}

/// A polynomial variable. `weight` is the declared degree of an `x` variable and 0 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub index: u32,
    pub weight: u32,
}

impl Var {
    pub fn v(i: u32) -> Var {
        Var { family: Family::Araki, index: i, weight: 0 }
    }
    pub fn big_v(i: u32) -> Var {
        Var { family: Family::Hazewinkel, index: i, weight: 0 }
    }
    pub fn t(i: u32, slot: u8) -> Var {
        Var { family: Family::t(slot), index: i, weight: 0 }
    }
    pub fn x(i: u32, degree: u32) -> Var {
        Var { family: Family::X, index: i, weight: degree }
    }

    pub fn degree(&self, params: &RingParams) -> u64 {
        match self.family {
            Family::X => self.weight as u64,
            _ => params.gen_degree(self.index),
        }
    }

    pub fn slot(&self) -> Option<u8> {
        self.family.slot()
    }

    pub fn is_t(&self) -> bool {
        self.slot().is_some()
    }

    /// Same variable moved to another tensor slot (identity on non-`t` variables).
    pub fn in_slot(&self, slot: u8) -> Var {
        if self.is_t() {
            Var::t(self.index, slot)
        } else {
            *self
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes = match self.slot() {
            Some(s) => "'".repeat(s as usize),
            None => String::new(),
        };
        write!(f, "{}{}{}", self.family.code(), self.index, primes)
    }
}

/// A monomial: variables with positive exponents, sorted by variable rank.
///
/// Ordering is [`lex_compare`], the lexicographic order in which the highest-ranked
/// variable dominates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Monomial {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut v: SmallVec<[(Var, u32); 4]> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by_key(|(x, _)| *x);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some((y, f)) if *y == x => *f += e,
                _ => out.push((x, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |(x, _)| *x)
            .map_or(0, |i| self.0[i].1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (*v, e * n)).collect())
    }

    pub fn degree(&self, params: &RingParams) -> u64 {
        self.0.iter().map(|(v, e)| v.degree(params) * *e as u64).sum()
    }

    /// Splits off the variables satisfying `pred`: `(matching, rest)`.
    pub fn split(&self, pred: impl Fn(&Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (SmallVec<_>, SmallVec<_>) = self.0.iter().copied().partition(|(v, _)| pred(v));
        (Monomial(a), Monomial(b))
    }

    pub fn any_var(&self, pred: impl Fn(&Var) -> bool) -> bool {
        self.0.iter().any(|(v, _)| pred(v))
    }

    /// Applies `f` to every exponent (dropping zeros).
    pub fn map_exponents(&self, f: impl Fn(&Var, u32) -> u32) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (*v, f(v, *e))).filter(|(_, e)| *e > 0).collect())
    }
}

/// Lexicographic order on monomials: compare exponent vectors starting from the
/// highest-ranked variable. The empty monomial is smallest.
pub fn lex_compare(a: &Monomial, b: &Monomial) -> Ordering {
    let (mut i, mut j) = (a.0.len(), b.0.len());
    loop {
        match (i, j) {
            (0, 0) => return Ordering::Equal,
            (0, _) => return Ordering::Less,
            (_, 0) => return Ordering::Greater,
            _ => {}
        }
        let (va, ea) = a.0[i - 1];
        let (vb, eb) = b.0[j - 1];
        match va.cmp(&vb) {
            Ordering::Greater => return Ordering::Greater,
            Ordering::Less => return Ordering::Less,
            Ordering::Equal => match ea.cmp(&eb) {
                Ordering::Equal => {
                    i -= 1;
                    j -= 1;
                }
                o => return o,
            },
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
