//! Sparse graded polynomials over a [`CoeffRing`].
//!
//! Variables are the generator families `v_i`, `V_i`, the `t_i` in up to three
//! tensor slots, and auxiliary `x` variables. Generators have degree `2(q^i − 1)`.
//! Terms are kept in [`lex_compare`] order, so iteration and serialization are
//! deterministic. Every polynomial remembers the degree bound it was truncated at.

mod json;
mod series;
mod var;

use std::collections::btree_map::Entry as BEntry;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::coeff::{CoeffRing, KField, PiAdic, PrimeField, RingParams, Valuation};
use crate::error::{Error, Result};
use crate::par;

pub use json::{poly_from_json, poly_to_json};
pub use series::{series_reverse, PowerSeries, QTypicalSeries};
pub use var::{lex_compare, Family, Monomial, Var};

/// Products with at least this many term pairs are split across threads.
const PAR_THRESHOLD: usize = 4096;

/// A sparse polynomial with coefficients in `R`.
#[derive(Clone)]
pub struct Poly<R: CoeffRing> {
    ring: R,
    bound: Option<u64>,
    terms: BTreeMap<Monomial, R::Elem>,
}

pub type KPoly = Poly<KField>;
pub type FpPoly = Poly<PrimeField>;

fn min_bound(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

type Acc<E> = FxHashMap<Monomial, E>;

impl<R: CoeffRing> Poly<R> {
    pub fn zero(ring: &R) -> Self {
        Poly { ring: ring.clone(), bound: None, terms: BTreeMap::new() }
    }

    pub fn one(ring: &R) -> Self {
        Poly::constant(ring, ring.one())
    }

    pub fn constant(ring: &R, c: R::Elem) -> Self {
        Poly::monomial(ring, Monomial::one(), c)
    }

    pub fn from_int(ring: &R, n: i64) -> Self {
        Poly::constant(ring, ring.from_i64(n))
    }

    pub fn var(ring: &R, v: Var) -> Self {
        Poly::monomial(ring, Monomial::var(v), ring.one())
    }

    pub fn monomial(ring: &R, m: Monomial, c: R::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), bound: None, terms }
    }

    /// Sums the given terms (repeated monomials are combined).
    pub fn from_terms(ring: &R, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut map: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in terms {
            match map.entry(m) {
                BEntry::Occupied(mut e) => ring.add_assign(e.get_mut(), &c),
                BEntry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        map.retain(|_, c| !ring.is_zero(c));
        Poly { ring: ring.clone(), bound: None, terms: map }
    }

    fn from_acc(ring: &R, acc: Acc<R::Elem>, bound: Option<u64>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Poly { ring: ring.clone(), bound, terms }
    }

    /// Sum of many polynomials, accumulated in one pass.
    pub fn sum<'a>(ring: &R, items: impl IntoIterator<Item = &'a Poly<R>>) -> Result<Self>
    where
        R: 'a,
    {
        let items: Vec<&Poly<R>> = items.into_iter().collect();
        let mut target = ring.clone();
        let mut bound = None;
        for p in &items {
            target = target.meet(&p.ring)?;
            bound = min_bound(bound, p.bound);
        }
        let mut acc: Acc<R::Elem> = FxHashMap::default();
        for p in items {
            for (m, c) in &p.terms {
                let c = target.coerce(c);
                match acc.entry(m.clone()) {
                    Entry::Occupied(mut e) => target.add_assign(e.get_mut(), &c),
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Ok(Poly::from_acc(&target, acc, None).truncate_opt(bound))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn params(&self) -> RingParams {
        self.ring.params()
    }

    /// Degree bound this polynomial was truncated at (`None`: exact).
    pub fn bound(&self) -> Option<u64> {
        self.bound
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, R::Elem> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && self.ring.is_one(c))
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&Monomial::one())
    }

    pub fn degree_of(&self, m: &Monomial) -> u64 {
        m.degree(&self.params())
    }

    /// Smallest and largest term degree, if nonzero.
    pub fn degree_range(&self) -> Option<(u64, u64)> {
        let params = self.params();
        let mut it = self.terms.keys().map(|m| m.degree(&params));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        match self.degree_range() {
            Some((lo, hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    /// Decomposition into homogeneous components.
    pub fn grade(&self) -> BTreeMap<u64, Poly<R>> {
        let params = self.params();
        let mut out: BTreeMap<u64, Poly<R>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let part = out.entry(m.degree(&params)).or_insert_with(|| Poly {
                ring: self.ring.clone(),
                bound: self.bound,
                terms: BTreeMap::new(),
            });
            part.terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// Discards terms of degree above `d` and records the bound.
    pub fn truncate(&self, d: u64) -> Self {
        self.clone().truncate_opt(Some(d))
    }

    fn truncate_opt(mut self, d: Option<u64>) -> Self {
        if let Some(d) = d {
            let params = self.params();
            self.terms.retain(|m, _| m.degree(&params) <= d);
            self.bound = min_bound(self.bound, Some(d));
        }
        self
    }

    /// Removes the recorded bound (for values known to be exact).
    pub fn exact(mut self) -> Self {
        self.bound = None;
        self
    }

    /// Coerces coefficients into `ring` (a ring this one meets to).
    pub fn coerce_to(&self, ring: &R) -> Self {
        if *ring == self.ring {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), ring.coerce(c)))
            .filter(|(_, c)| !ring.is_zero(c))
            .collect();
        Poly { ring: ring.clone(), bound: self.bound, terms }
    }

    fn common(&self, other: &Self) -> Result<(R, Option<u64>)> {
        Ok((self.ring.meet(&other.ring)?, min_bound(self.bound, other.bound)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (ring, bound) = self.common(other)?;
        let mut out = self.coerce_to(&ring);
        for (m, c) in &other.terms {
            let c = ring.coerce(c);
            match out.terms.entry(m.clone()) {
                BEntry::Occupied(mut e) => {
                    ring.add_assign(e.get_mut(), &c);
                    if ring.is_zero(e.get()) {
                        e.remove();
                    }
                }
                BEntry::Vacant(e) => {
                    if !ring.is_zero(&c) {
                        e.insert(c);
                    }
                }
            }
        }
        Ok(Poly::truncate_opt(out, bound))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            bound: self.bound,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R::Elem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), self.ring.mul(x, c)))
            .filter(|(_, x)| !self.ring.is_zero(x))
            .collect();
        Poly { ring: self.ring.clone(), bound: self.bound, terms }
    }

    /// Multiplies by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            ring: self.ring.clone(),
            bound: None,
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
        .with_bound_opt(self.bound)
    }

    fn with_bound_opt(self, b: Option<u64>) -> Self {
        self.truncate_opt(b)
    }

    /// Terms in the ring's product form, with their degrees.
    #[allow(clippy::type_complexity)]
    fn prepared(&self) -> (R::Elem, Vec<(&Monomial, R::Wide, u64)>) {
        let params = self.ring.params();
        let coeffs: Vec<&R::Elem> = self.terms.values().collect();
        let (scale, wide) = self.ring.prepare(&coeffs);
        (scale, self.terms.keys().zip(wide).map(|(m, w)| (m, w, m.degree(&params))).collect())
    }

    /// Product truncated at `bound` (combined with both operands' bounds).
    pub fn mul_with(&self, other: &Self, bound: Option<u64>, parallel: bool) -> Result<Self> {
        let (ring, b0) = self.common(other)?;
        let bound = min_bound(b0, bound);
        let a = self.coerce_to(&ring);
        let b = other.coerce_to(&ring);
        let (sa, at) = a.prepared();
        let (sb, mut bt) = b.prepared();
        bt.sort_by_key(|t| t.2);
        let work = |mut acc: Acc<R::Wide>, (ma, ca, da): &(&Monomial, R::Wide, u64)| {
            for (mb, cb, db) in &bt {
                if bound.is_some_and(|d| da + db > d) {
                    break;
                }
                let slot = acc.entry(ma.mul(mb)).or_insert_with(|| ring.wide_zero());
                ring.wide_mul_add(slot, ca, cb);
            }
            acc
        };
        let merge = |mut x: Acc<R::Wide>, mut y: Acc<R::Wide>| {
            if x.len() < y.len() {
                std::mem::swap(&mut x, &mut y);
            }
            for (m, c) in y {
                match x.entry(m) {
                    Entry::Occupied(mut e) => ring.wide_add_assign(e.get_mut(), &c),
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
            x
        };
        let parallel = parallel && par::ENABLED && at.len() * bt.len() >= PAR_THRESHOLD;
        let acc = if parallel {
            par::fold_reduce(&at, FxHashMap::default, work, merge)
        } else {
            at.iter().fold(FxHashMap::default(), work)
        };
        let scale = ring.mul(&sa, &sb);
        let entries: Vec<(Monomial, R::Wide)> = acc.into_iter().collect();
        let finish = |(m, w): &(Monomial, R::Wide)| (m.clone(), ring.finish(w.clone(), &scale));
        let terms = if parallel { par::map(&entries, finish) } else { entries.iter().map(finish).collect() };
        Ok(Poly::from_terms(&ring, terms).with_bound_opt(bound))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, None, true)
    }

    /// Product truncated at degree `d`.
    pub fn mul_trunc(&self, other: &Self, d: u64) -> Self {
        self.mul_with(other, Some(d), true).expect("incompatible rings")
    }

    /// Product computed on the calling thread only.
    pub fn mul_seq(&self, other: &Self) -> Self {
        self.mul_with(other, None, false).expect("incompatible rings")
    }

    /// Product using the data-parallel path when large enough.
    pub fn mul_par(&self, other: &Self) -> Self {
        self.mul_with(other, None, true).expect("incompatible rings")
    }

    pub fn pow(&self, n: u64) -> Self {
        self.pow_trunc(n, None)
    }

    pub fn pow_trunc(&self, n: u64, bound: Option<u64>) -> Self {
        let bound = min_bound(bound, self.bound);
        if n == 0 {
            return Poly::one(&self.ring).with_bound_opt(bound);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let e: u32 = n.try_into().expect("exponent too large");
            let mono = m.pow(e);
            return Poly::monomial(&self.ring, mono, self.ring.pow(c, n)).with_bound_opt(bound);
        }
        // Base-p ladder: x^n = Π (x^{p^i})^{d_i}. Iterated p-th powers stay sparse
        // modulo π^n, where binary squaring would pass through dense intermediates.
        let p = self.params().p();
        let mut acc = Poly::one(&self.ring).with_bound_opt(bound);
        let mut base = self.clone();
        let mut k = n;
        loop {
            let digit = k % p;
            if digit > 0 {
                acc = acc.mul_with(&base.pow_binary(digit, bound), bound, true).expect("same ring");
            }
            k /= p;
            if k == 0 {
                break;
            }
            base = base.pow_binary(p, bound);
        }
        acc
    }

    fn pow_binary(&self, n: u64, bound: Option<u64>) -> Self {
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut k = n;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul_with(&base, bound, true).expect("same ring"),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul_with(&base, bound, true).expect("same ring");
        }
        acc.unwrap_or_else(|| Poly::one(&self.ring)).with_bound_opt(bound)
    }

    /// Ring homomorphism sending each variable `x` to `f(x)` (or to itself when `f` returns `None`).
    pub fn substitute<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&Var) -> Option<Poly<R>> + Sync,
    {
        let bound = self.bound;
        let mut need: BTreeMap<Var, BTreeSet<u32>> = BTreeMap::new();
        for m in self.terms.keys() {
            for (v, e) in m.pairs() {
                need.entry(*v).or_default().insert(*e);
            }
        }
        let mut ring = self.ring.clone();
        let mut cache: FxHashMap<(Var, u32), Poly<R>> = FxHashMap::default();
        let mut substituted: BTreeSet<Var> = BTreeSet::new();
        for (v, exps) in need {
            let Some(img) = f(&v) else { continue };
            ring = ring.meet(&img.ring)?;
            substituted.insert(v);
            let mut prev_e = 0;
            let mut prev = Poly::one(&img.ring);
            for e in exps {
                let step = img.pow_trunc((e - prev_e) as u64, bound);
                prev = prev.mul_with(&step, bound, true)?;
                prev_e = e;
                cache.insert((v, e), prev.clone());
            }
        }
        let terms: Vec<(&Monomial, &R::Elem)> = self.terms.iter().collect();
        let ring_ref = &ring;
        let parts: Vec<Result<Poly<R>>> = par::map(&terms, |(m, c)| {
            let (subst, kept) = m.split(|v| substituted.contains(v));
            let mut acc = Poly::monomial(ring_ref, kept, ring_ref.coerce(c)).with_bound_opt(bound);
            for (v, e) in subst.pairs() {
                if acc.is_zero() {
                    break;
                }
                acc = acc.mul_with(&cache[&(*v, *e)], bound, false)?;
            }
            Ok(acc)
        });
        let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(Poly::sum(&ring, parts.iter())?.with_bound_opt(bound))
    }

    /// Renames variables (the map should be injective on the variables present).
    pub fn map_vars(&self, f: impl Fn(&Var) -> Var) -> Self {
        Poly::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| {
                (Monomial::from_pairs(m.pairs().iter().map(|(v, e)| (f(v), *e))), c.clone())
            }),
        )
        .with_bound_opt(self.bound)
    }

    /// Applies `f` to each coefficient, landing in `target`.
    pub fn map_coeffs<S: CoeffRing>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !target.is_zero(c))
            .collect();
        Poly { ring: target.clone(), bound: self.bound, terms }
    }

    pub fn try_map_coeffs<S: CoeffRing>(
        &self,
        target: &S,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<Poly<S>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let x = f(c)?;
            if !target.is_zero(&x) {
                terms.insert(m.clone(), x);
            }
        }
        Ok(Poly { ring: target.clone(), bound: self.bound, terms })
    }

    /// Keeps the terms satisfying `pred`.
    pub fn filter(&self, pred: impl Fn(&Monomial, &R::Elem) -> bool) -> Self {
        Poly {
            ring: self.ring.clone(),
            bound: self.bound,
            terms: self.terms.iter().filter(|(m, c)| pred(m, c)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Applies `f` to every monomial, combining collisions.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        Poly::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (f(m), c.clone()))).with_bound_opt(self.bound)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|(v, _)| *v)).collect()
    }
}

impl<R: PiAdic> Poly<R> {
    /// Divides every coefficient by `π^k`; errors when some coefficient is not divisible.
    pub fn div_pi_pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        let target = self.ring.quotient_ring(k)?;
        self.try_map_coeffs(&target, |c| self.ring.div_pi_pow(c, k))
    }

    /// Divides every coefficient by `π − π^{q^h}` (`h ≥ 1`).
    pub fn div_pi_a(&self, h: u32) -> Result<Self> {
        let shifted = self.div_pi_pow(1)?;
        let ring = shifted.ring.clone();
        let inv = ring.unit_inverse(self.params().q_pow(h) - 1);
        Ok(shifted.scale(&inv))
    }

    /// Coefficientwise reduction to the residue field.
    pub fn reduce_mod_pi(&self) -> Result<FpPoly> {
        let fp = PrimeField::new(self.params());
        self.try_map_coeffs(&fp, |c| self.ring.residue(c))
    }
}

impl Poly<KField> {
    /// Minimum π-adic valuation over all coefficients.
    pub fn min_valuation(&self) -> Valuation {
        self.terms.values().map(|c| self.ring.valuation(c)).min().unwrap_or(Valuation::Infinite)
    }

    /// A term with negative valuation, if any.
    pub fn non_integral_term(&self) -> Option<String> {
        self.terms.iter().find_map(|(m, c)| match self.ring.valuation(c) {
            Valuation::Finite(v) if v < 0 => Some(format!("{}*{m} (valuation {v})", self.ring.render(c))),
            _ => None,
        })
    }

    pub fn is_integral(&self) -> bool {
        self.non_integral_term().is_none()
    }

    /// Errors with a witness term unless every coefficient is π-integral.
    pub fn assert_integral(&self, context: &str) -> Result<()> {
        match self.non_integral_term() {
            None => Ok(()),
            Some(w) => Err(Error::NotIntegral { context: context.to_string(), witness: w }),
        }
    }

    /// Image in the truncation `Z[π]/(π^n)`.
    pub fn to_residue(&self, ring: &crate::coeff::ResidueRing) -> Result<Poly<crate::coeff::ResidueRing>> {
        self.try_map_coeffs(ring, |c| ring.from_k(c))
    }
}

impl<R: CoeffRing> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<R: CoeffRing> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<R: CoeffRing> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let coeff = self.ring.render(c);
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<R: CoeffRing> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        self.try_add(rhs).expect("incompatible rings")
    }
}

impl<R: CoeffRing> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        self.try_sub(rhs).expect("incompatible rings")
    }
}

impl<R: CoeffRing> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        self.try_mul(rhs).expect("incompatible rings")
    }
}

impl<R: CoeffRing> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::neg(self)
    }
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `a op b`, discarding every term of degree above `d`.
pub fn poly_arith<R: CoeffRing>(a: &Poly<R>, b: &Poly<R>, op: ArithOp, d: u64) -> Result<Poly<R>> {
    match op {
        ArithOp::Add => Ok(a.try_add(b)?.truncate(d)),
        ArithOp::Sub => Ok(a.try_sub(b)?.truncate(d)),
        ArithOp::Mul => a.mul_with(b, Some(d), true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_ring, KField};

    fn setup() -> (RingParams, KField) {
        let params = make_ring(3, 1, 1, 1).unwrap();
        (params, KField::new(params))
    }

    #[test]
    fn truncated_arithmetic() {
        let (params, k) = setup();
        let v1 = Poly::var(&k, Var::v(1));
        let t1 = Poly::var(&k, Var::t(1, 0));
        assert_eq!(poly_arith(&v1, &Poly::zero(&k), ArithOp::Add, 100).unwrap(), v1);
        let d = 4 * (params.q() - 1);
        assert_eq!(poly_arith(&v1, &t1, ArithOp::Mul, d).unwrap().len(), 1);
        let one = Poly::one(&k);
        let prod = poly_arith(&(&one + &v1), &(&one - &v1), ArithOp::Mul, d - 1).unwrap();
        assert_eq!(prod.exact(), one);
    }

    #[test]
    fn grading() {
        let (params, k) = setup();
        let v1 = Poly::var(&k, Var::v(1));
        let g = (&Poly::one(&k) + &v1).grade();
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), vec![0, 2 * (params.q() - 1)]);
        assert_eq!(Poly::var(&k, Var::t(2, 0)).homogeneous_degree(), Some(2 * (params.q_pow(2) - 1)));
    }

    #[test]
    fn lex_order() {
        let v1sq = Monomial::var_pow(Var::v(1), 2);
        let v2 = Monomial::var(Var::v(2));
        assert_eq!(lex_compare(&v1sq, &v2), std::cmp::Ordering::Less);
        assert_eq!(lex_compare(&v2, &v2), std::cmp::Ordering::Equal);
        assert_eq!(lex_compare(&Monomial::one(), &Monomial::var(Var::v(1))), std::cmp::Ordering::Less);
    }

    #[test]
    fn series_examples() {
        let (params, k) = setup();
        let y = Poly::var(&k, Var::x(1, 2));
        let z = Poly::var(&k, Var::x(2, 2));
        let id = QTypicalSeries::identity(&k);
        assert_eq!(id.substitute(&(&y + &z), 50).unwrap().exact(), &y + &z);
        let l1 = Poly::constant(&k, k.from_ratio(1, 7));
        let l2 = Poly::constant(&k, k.from_ratio(2, 5));
        let s = QTypicalSeries::new(&k, vec![Poly::one(&k), l1.clone(), l2]);
        let yz = &y + &z;
        let want = &yz + &(&l1 * &yz.pow(params.q()));
        // Degree 2q is reached at the q-th power; the q²-th is cut off.
        assert_eq!(s.substitute(&yz, 2 * params.q()).unwrap().exact(), want);
        let inv = series_reverse(&QTypicalSeries::new(&k, vec![Poly::one(&k), l1.clone()]), 0).unwrap();
        assert_eq!(inv.coeff(1), Poly::one(&k));
        let inv = series_reverse(&QTypicalSeries::new(&k, vec![Poly::one(&k), l1.clone()]), 1).unwrap();
        assert_eq!(inv.coeff(params.q()), l1.neg());
    }

    #[test]
    fn json_round_trip() {
        let (_, k) = setup();
        let p = &Poly::var(&k, Var::v(1)).scale(&k.from_ratio(-2, 3)) + &Poly::var(&k, Var::t(2, 1)).pow(4);
        assert_eq!(poly_from_json(&k, &poly_to_json(&p)).unwrap(), p);
        assert_eq!(p.to_string(), "-2/3*v1 + t2'^4");
    }
}
