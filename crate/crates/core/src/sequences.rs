//! Finite sequences of positive integers and the products indexed by them.
//!
//! For `I = (i_1, …, i_m)`: `|I| = m`, `‖I‖ = Σ i_j`, `I'' = (i_1 + i_2, i_3, …)`,
//! `I''' = (i_2, i_3, …)`. Concatenation makes sequences a monoid with unit `()`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffRing, KElement, KField, RingParams};
use crate::error::{Error, Result};
use crate::gpoly::{Poly, Var};

/// A finite sequence of positive integers; derived ordering is lexicographic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seq(Vec<u32>);

/// The statistics `(|I|, ‖I‖, I'', I''')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqStats {
    pub length: usize,
    pub norm: u32,
    pub dprime: Result<Seq>,
    pub tprime: Result<Seq>,
}

impl Seq {
    pub fn new(entries: Vec<u32>) -> Result<Seq> {
        if entries.contains(&0) {
            return Err(Error::Sequence("entries must be positive"));
        }
        Ok(Seq(entries))
    }

    pub fn empty() -> Seq {
        Seq(Vec::new())
    }

    pub fn single(k: u32) -> Seq {
        assert!(k > 0, "entries must be positive");
        Seq(vec![k])
    }

    /// `(k, k, …, k)` with `n` entries.
    pub fn repeat(k: u32, n: usize) -> Seq {
        assert!(k > 0, "entries must be positive");
        Seq(vec![k; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Seq) -> Seq {
        Seq([self.0.as_slice(), other.0.as_slice()].concat())
    }

    /// `I'' = (i_1 + i_2, i_3, …)`; needs `|I| ≥ 2`.
    pub fn dprime(&self) -> Result<Seq> {
        if self.0.len() < 2 {
            return Err(Error::Sequence("I'' needs at least two entries"));
        }
        let mut v = vec![self.0[0] + self.0[1]];
        v.extend_from_slice(&self.0[2..]);
        Ok(Seq(v))
    }

    /// `I''' = (i_2, i_3, …)`; needs `|I| ≥ 1`.
    pub fn tprime(&self) -> Result<Seq> {
        if self.0.is_empty() {
            return Err(Error::Sequence("I''' needs at least one entry"));
        }
        Ok(Seq(self.0[1..].to_vec()))
    }

    /// The sequence with its last entry removed.
    pub fn without_last(&self) -> Seq {
        let mut v = self.0.clone();
        v.pop();
        Seq(v)
    }

    pub fn stats(&self) -> SeqStats {
        SeqStats { length: self.len(), norm: self.norm(), dprime: self.dprime(), tprime: self.tprime() }
    }

    /// All sequences with `‖I‖ = n`, in lexicographic order.
    pub fn compositions(n: u32) -> Vec<Seq> {
        Seq::compositions_bounded(n, 1, None)
    }

    /// Sequences with `‖I‖ = n`, every entry `≥ min_part`, and optionally exactly `len` entries.
    pub fn compositions_bounded(n: u32, min_part: u32, len: Option<usize>) -> Vec<Seq> {
        fn go(n: u32, min_part: u32, len: Option<usize>, prefix: &mut Vec<u32>, out: &mut Vec<Seq>) {
            if n == 0 {
                if len.is_none_or(|l| l == prefix.len()) {
                    out.push(Seq(prefix.clone()));
                }
                return;
            }
            if len.is_some_and(|l| prefix.len() >= l) {
                return;
            }
            for k in min_part.max(1)..=n {
                prefix.push(k);
                go(n - k, min_part, len, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, min_part, len, &mut Vec::new(), &mut out);
        out
    }

    /// All nonempty sequences with `‖I‖ ≤ n`, ordered by norm then lexicographically.
    pub fn up_to(n: u32) -> Vec<Seq> {
        (1..=n).flat_map(Seq::compositions).collect()
    }

    /// All ways to write `self = I·J`, as `(I, J)` with `|I|` increasing.
    pub fn splittings(&self) -> Vec<(Seq, Seq)> {
        (0..=self.0.len()).map(|k| (Seq(self.0[..k].to_vec()), Seq(self.0[k..].to_vec()))).collect()
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Seq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Seq> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Seq::empty());
        }
        let entries = body
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad sequence entry {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Seq::new(entries)
    }
}

/// `Π_A(I)`: `Π_A(()) = 1`, `Π_A((h)) = π − π^{q^h}`,
/// `Π_A(I) = Π_A(‖I‖) · Π_A(I without its last entry)`.
pub fn pi_a_seq(ring: &RingParams, seq: &Seq) -> KElement {
    let k = KField::new(*ring);
    let mut acc = k.one();
    let mut prefix = seq.clone();
    while !prefix.is_empty() {
        acc = k.mul(&acc, &k.pi_a(prefix.norm()));
        prefix = prefix.without_last();
    }
    acc
}

/// `x_I = x_{i_1} · (x_{I'''})^{q^{i_1}}` for an arbitrary assignment `i ↦ x_i`; `x_() = 1`.
pub fn indexed_product<R: CoeffRing>(ring: &R, seq: &Seq, image: impl Fn(u32) -> Poly<R>) -> Poly<R> {
    let q = ring.params().q();
    seq.entries().iter().rev().fold(Poly::one(ring), |tail, &i| {
        &image(i) * &tail.pow(q.pow(i))
    })
}

/// The monomial `v_I` (Araki), `V_I` (Hazewinkel) or `t_I` in slot 0, selected by `var`.
pub fn indexed_monomial<R: CoeffRing>(ring: &R, seq: &Seq, var: impl Fn(u32) -> Var) -> Poly<R> {
    indexed_product(ring, seq, |i| Poly::var(ring, var(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::make_ring;

    fn seq(s: &str) -> Seq {
        s.parse().unwrap()
    }

    #[test]
    fn stats() {
        let s = seq("(1,2,3)").stats();
        assert_eq!((s.length, s.norm), (3, 6));
        assert_eq!(s.dprime.unwrap(), seq("(3,3)"));
        assert_eq!(s.tprime.unwrap(), seq("(2,3)"));
        let e = Seq::empty().stats();
        assert_eq!((e.length, e.norm), (0, 0));
        assert!(e.dprime.is_err() && e.tprime.is_err());
        let five = Seq::single(5).stats();
        assert!(five.dprime.is_err());
        assert_eq!(five.tprime.unwrap(), Seq::empty());
        assert!(Seq::new(vec![1, 0]).is_err());
    }

    #[test]
    fn enumeration() {
        let c: Vec<String> = Seq::compositions(3).iter().map(Seq::to_string).collect();
        assert_eq!(c, ["(1,1,1)", "(1,2)", "(2,1)", "(3)"]);
        assert_eq!(Seq::up_to(4).len(), 1 + 2 + 4 + 8);
        let s = Seq::compositions_bounded(5, 2, Some(2));
        assert_eq!(s, vec![seq("(2,3)"), seq("(3,2)")]);
        assert_eq!(seq("(1,2)").splittings().len(), 3);
    }

    #[test]
    fn pi_products() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let k = KField::new(params);
        assert_eq!(pi_a_seq(&params, &Seq::empty()), k.one());
        assert_eq!(pi_a_seq(&params, &Seq::single(2)), k.pi_a(2));
        assert_eq!(pi_a_seq(&params, &seq("(1,1)")), k.mul(&k.pi_a(2), &k.pi_a(1)));
        assert_eq!(pi_a_seq(&params, &Seq::single(1)), k.from_i64(-24));
    }

    #[test]
    fn indexed_monomials() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let k = KField::new(params);
        assert_eq!(indexed_monomial(&k, &Seq::single(2), Var::v), Poly::var(&k, Var::v(2)));
        assert_eq!(indexed_monomial(&k, &Seq::empty(), Var::v), Poly::one(&k));
        let t1 = Poly::var(&k, Var::t(1, 0));
        assert_eq!(indexed_monomial(&k, &seq("(1,1)"), |i| Var::t(i, 0)), &t1 * &t1.pow(3));
    }
}
