use std::collections::BTreeMap;

use super::{min_bound, Poly};
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};

/// `Σ c_i X^{q^i}`: the shape of logarithms and of strict isomorphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct QTypicalSeries<R: CoeffRing> {
    ring: R,
    coeffs: Vec<Poly<R>>,
}

impl<R: CoeffRing> QTypicalSeries<R> {
    pub fn new(ring: &R, coeffs: Vec<Poly<R>>) -> Self {
        QTypicalSeries { ring: ring.clone(), coeffs }
    }

    /// The identity series `X`.
    pub fn identity(ring: &R) -> Self {
        QTypicalSeries::new(ring, vec![Poly::one(ring)])
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Poly<R>] {
        &self.coeffs
    }

    /// Highest index `n` with a stored coefficient.
    pub fn level(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `Σ c_i · arg^{q^i}`, truncated at degree `d`.
    pub fn substitute(&self, arg: &Poly<R>, d: u64) -> Result<Poly<R>> {
        let q = self.ring.params().q();
        let lo = match arg.degree_range() {
            None => return Ok(Poly::zero(&self.ring).truncate(d)),
            Some((lo, _)) => lo,
        };
        let mut acc = Poly::zero(&self.ring).truncate(d);
        let mut qi: u64 = 1;
        for c in &self.coeffs {
            if lo > 0 && lo.saturating_mul(qi) > d {
                break;
            }
            if !c.is_zero() {
                let power = arg.pow_trunc(qi, Some(d));
                acc = acc.try_add(&c.mul_with(&power, Some(d), true)?)?;
            }
            qi = qi.saturating_mul(q);
        }
        Ok(acc)
    }

    /// The same series as a general power series, known modulo `X^order`.
    pub fn to_power_series(&self, order: u64) -> PowerSeries<R> {
        let q = self.ring.params().q();
        let mut out = PowerSeries::zero(&self.ring, order);
        let mut qi: u64 = 1;
        for c in &self.coeffs {
            if qi >= order {
                break;
            }
            out.set(qi, c.clone());
            qi = qi.saturating_mul(q);
        }
        out
    }
}

/// Compositional inverse of a strict q-typical series, modulo `X^{q^{n+1}}`.
///
/// The inverse of a q-typical series is in general not q-typical (an exponential
/// has terms in every degree `≡ 1 mod (q − 1)`), so the result is a general series;
/// its coefficients at `X^{q^i}` are the q-typical part.
pub fn series_reverse<R: CoeffRing>(s: &QTypicalSeries<R>, n: u32) -> Result<PowerSeries<R>> {
    let order = s.ring.params().q_pow(n + 1);
    s.to_power_series(order).reverse()
}

/// A power series `Σ a_n X^n` with polynomial coefficients, known modulo `X^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<R: CoeffRing> {
    ring: R,
    order: u64,
    bound: Option<u64>,
    coeffs: BTreeMap<u64, Poly<R>>,
}

impl<R: CoeffRing> PowerSeries<R> {
    pub fn zero(ring: &R, order: u64) -> Self {
        PowerSeries { ring: ring.clone(), order, bound: None, coeffs: BTreeMap::new() }
    }

    /// The series `X`.
    pub fn x(ring: &R, order: u64) -> Self {
        let mut s = PowerSeries::zero(ring, order);
        s.set(1, Poly::one(ring));
        s
    }

    pub fn from_coeffs(ring: &R, order: u64, coeffs: impl IntoIterator<Item = (u64, Poly<R>)>) -> Self {
        let mut s = PowerSeries::zero(ring, order);
        for (n, c) in coeffs {
            let sum = s.coeff(n).try_add(&c).expect("compatible rings");
            s.set(n, sum);
        }
        s
    }

    /// Also truncate every coefficient polynomial at internal degree `d`.
    pub fn with_bound(mut self, d: u64) -> Self {
        self.bound = min_bound(self.bound, Some(d));
        let coeffs = std::mem::take(&mut self.coeffs);
        for (n, c) in coeffs {
            self.set(n, c.truncate(d));
        }
        self
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeff(&self, n: u64) -> Poly<R> {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| Poly::zero(&self.ring))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u64, &Poly<R>)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn set(&mut self, n: u64, c: Poly<R>) {
        let c = match self.bound {
            Some(d) => c.truncate(d),
            None => c,
        };
        if n >= self.order || c.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, c);
        }
    }

    /// Reduces modulo `X^order`.
    pub fn truncated(&self, order: u64) -> Self {
        let mut s = PowerSeries { ring: self.ring.clone(), order: order.min(self.order), bound: self.bound, coeffs: BTreeMap::new() };
        for (n, c) in &self.coeffs {
            s.set(*n, c.clone());
        }
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut s = self.truncated(other.order);
        s.bound = min_bound(self.bound, other.bound);
        for (n, c) in &other.coeffs {
            let sum = s.coeff(*n).try_add(c)?;
            s.set(*n, sum);
        }
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = c.neg();
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by the polynomial `c`.
    pub fn scale(&self, c: &Poly<R>) -> Result<Self> {
        let mut s = PowerSeries { coeffs: BTreeMap::new(), ..self.clone() };
        for (n, a) in &self.coeffs {
            s.set(*n, a.mul_with(c, self.bound, true)?);
        }
        Ok(s)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let order = self.order.min(other.order);
        let bound = min_bound(self.bound, other.bound);
        let mut acc: BTreeMap<u64, Vec<Poly<R>>> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if i + j >= order {
                    break;
                }
                acc.entry(i + j).or_default().push(a.mul_with(b, bound, true)?);
            }
        }
        let mut s = PowerSeries { ring: self.ring.clone(), order, bound, coeffs: BTreeMap::new() };
        for (n, parts) in acc {
            s.set(n, Poly::sum(&self.ring, parts.iter())?);
        }
        Ok(s)
    }

    pub fn pow(&self, n: u64) -> Result<Self> {
        let mut acc = PowerSeries::zero(&self.ring, self.order);
        acc.bound = self.bound;
        acc.set(0, Poly::one(&self.ring));
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self(inner)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::OutOfRange("inner series of a composition must have no constant term".into()));
        }
        let order = self.order.min(inner.order);
        let mut out = PowerSeries::zero(&self.ring, order);
        out.bound = min_bound(self.bound, inner.bound);
        let mut power = PowerSeries::zero(&self.ring, order);
        power.bound = out.bound;
        power.set(0, Poly::one(&self.ring));
        let mut k = 0;
        for (n, a) in &self.coeffs {
            if *n >= order {
                break;
            }
            while k < *n {
                power = power.mul(inner)?;
                k += 1;
            }
            out = out.add(&power.scale(a)?)?;
        }
        Ok(out)
    }

    /// Compositional inverse of `X + Σ_{n≥2} a_n X^n` modulo `X^order`.
    pub fn reverse(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() || !self.coeff(1).is_one() {
            return Err(Error::OutOfRange("only series X + O(X^2) can be reversed".into()));
        }
        let x = {
            let mut s = PowerSeries::x(&self.ring, self.order);
            s.bound = self.bound;
            s
        };
        let higher: Vec<(u64, &Poly<R>)> = self.coeffs.iter().filter(|(n, _)| **n >= 2).map(|(n, c)| (*n, c)).collect();
        // Fixed point of g = X − Σ a_n g^n; every pass fixes at least one more coefficient.
        let mut g = x.clone();
        for _ in 0..self.order {
            let mut next = x.clone();
            for (n, a) in &higher {
                next = next.sub(&g.pow(*n)?.scale(a)?)?;
            }
            if next == g {
                break;
            }
            g = next;
        }
        Ok(g)
    }

    /// `Σ a_n · arg^n` as a polynomial, truncated at degree `d`.
    pub fn substitute(&self, arg: &Poly<R>, d: u64) -> Result<Poly<R>> {
        let lo = match arg.degree_range() {
            None => return Ok(self.coeff(0).truncate(d)),
            Some((lo, _)) => lo,
        };
        let mut acc = Poly::zero(&self.ring).truncate(d);
        let mut power = Poly::one(&self.ring).truncate(d);
        let mut k = 0;
        for (n, a) in &self.coeffs {
            if lo > 0 && lo.saturating_mul(*n) > d {
                break;
            }
            while k < *n {
                power = power.mul_with(arg, Some(d), true)?;
                k += 1;
            }
            acc = acc.try_add(&a.mul_with(&power, Some(d), true)?)?;
        }
        Ok(acc)
    }
}
