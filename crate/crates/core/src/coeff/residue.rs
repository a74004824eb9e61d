use smallvec::SmallVec;

use super::field::{mod_inverse, p_val_rat, rat_mod};
use super::{CoeffRing, KElement, PiAdic, RingParams};
use crate::error::{Error, Result};

/// `Z_(p)[π]/(π^e − u·p, π^n)`: elements known modulo `π^n`.
///
/// Coordinate `i` lives modulo `p^{m_i}` with `m_i = ⌈(n − i)/e⌉`, which is exactly
/// the information `π^n` leaves. Dividing by π lowers the precision by one; mixing
/// precisions coerces to the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    params: RingParams,
    prec: u32,
    moduli: SmallVec<[u64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElem {
    coords: SmallVec<[u64; 2]>,
}

/// Moduli must stay below this so that sums of two products fit in `u128`.
const MODULUS_LIMIT: u128 = 1 << 62;

impl ResidueRing {
    pub fn new(params: RingParams, prec: u32) -> Result<Self> {
        let e = params.e();
        let mut moduli = SmallVec::new();
        for i in 0..e {
            let m = if prec > i { (prec - i).div_ceil(e) } else { 0 };
            let mut modulus: u128 = 1;
            for _ in 0..m {
                modulus *= params.p() as u128;
                if modulus >= MODULUS_LIMIT {
                    return Err(Error::PrecisionOverflow(prec));
                }
            }
            moduli.push(modulus as u64);
        }
        Ok(ResidueRing { params, prec, moduli })
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Largest precision representable for these parameters.
    pub fn max_precision(params: RingParams) -> u32 {
        let mut n = 1;
        while ResidueRing::new(params, n + 1).is_ok() {
            n += 1;
        }
        n
    }

    fn e(&self) -> usize {
        self.params.e() as usize
    }

    /// `u·p mod m`.
    fn up_mod(&self, m: u128) -> u128 {
        let u = (self.params.u() as i128).rem_euclid(m as i128) as u128;
        u * (self.params.p() as u128 % m) % m
    }

    fn reduce(&self, raw: &[u128]) -> ResidueElem {
        ResidueElem {
            coords: raw.iter().zip(&self.moduli).map(|(c, m)| (*c % *m as u128) as u64).collect(),
        }
    }

    /// Image of an element of `K` with p-integral coordinates.
    pub fn from_k(&self, a: &KElement) -> Result<ResidueElem> {
        let mut coords = SmallVec::new();
        for (c, m) in a.coords().iter().zip(&self.moduli) {
            if !num_traits::Zero::is_zero(c) && p_val_rat(c, self.params.p()) < 0 {
                return Err(Error::NegativeValuation(p_val_rat(c, self.params.p())));
            }
            coords.push(rat_mod(c, *m).expect("p-integral coordinate"));
        }
        Ok(ResidueElem { coords })
    }

    /// Lowers precision.
    pub fn truncate_to(&self, prec: u32) -> Result<ResidueRing> {
        ResidueRing::new(self.params, prec.min(self.prec))
    }

    fn div_pi_once(&self, a: &ResidueElem) -> Result<ResidueElem> {
        let p = self.params.p();
        if self.prec <= 1 {
            return Err(Error::PrecisionExhausted);
        }
        let c0 = a.coords[0];
        if c0 % p != 0 {
            return Err(Error::NotDivisible(format!("{a:?}")));
        }
        let target = ResidueRing::new(self.params, self.prec - 1)?;
        let e = self.e();
        // a = Σ c_i π^i with p | c_0; π^e = u·p gives c_0 = (c_0/p)·u^{-1}·π^e.
        let mut raw: Vec<u128> = vec![0; e];
        for i in 1..e {
            raw[i - 1] = a.coords[i] as u128;
        }
        let m = target.moduli[e - 1].max(1);
        let u = self.params.u().rem_euclid(m as i64) as u64;
        let u_inv = mod_inverse(u, m).expect("u is a unit");
        raw[e - 1] = ((c0 / p) as u128 % m as u128) * u_inv as u128;
        Ok(target.reduce(&raw))
    }
}

impl CoeffRing for ResidueRing {
    type Elem = ResidueElem;

    fn params(&self) -> RingParams {
        self.params
    }
    fn zero(&self) -> ResidueElem {
        ResidueElem { coords: SmallVec::from_elem(0, self.e()) }
    }
    fn from_i64(&self, n: i64) -> ResidueElem {
        let mut coords: SmallVec<[u64; 2]> = SmallVec::from_elem(0, self.e());
        coords[0] = (n as i128).rem_euclid(self.moduli[0].max(1) as i128) as u64;
        if self.moduli[0] <= 1 {
            coords[0] = 0;
        }
        ResidueElem { coords }
    }
    fn is_zero(&self, a: &ResidueElem) -> bool {
        a.coords.iter().all(|c| *c == 0)
    }
    fn add_assign(&self, a: &mut ResidueElem, b: &ResidueElem) {
        for ((x, y), m) in a.coords.iter_mut().zip(&b.coords).zip(&self.moduli) {
            *x = ((*x as u128 + *y as u128) % *m as u128) as u64;
        }
    }
    fn neg(&self, a: &ResidueElem) -> ResidueElem {
        ResidueElem {
            coords: a.coords.iter().zip(&self.moduli).map(|(x, m)| (*m - *x % *m) % *m).collect(),
        }
    }
    fn mul(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        let e = self.e();
        let big = self.moduli[0] as u128;
        if big <= 1 {
            return self.zero();
        }
        if e == 1 {
            return self.reduce(&[a.coords[0] as u128 * b.coords[0] as u128]);
        }
        let mut acc = vec![0u128; 2 * e - 1];
        for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| **y != 0) {
                acc[i + j] = (acc[i + j] + (*x as u128 * *y as u128) % big) % big;
            }
        }
        let up = self.up_mod(big);
        for k in (e..2 * e - 1).rev() {
            let c = std::mem::take(&mut acc[k]);
            acc[k - e] = (acc[k - e] + (c * up) % big) % big;
        }
        acc.truncate(e);
        self.reduce(&acc)
    }
    fn pi_pow(&self, n: u64) -> ResidueElem {
        if n >= self.prec as u64 {
            return self.zero();
        }
        let e = self.params.e() as u64;
        let (a, b) = (n / e, (n % e) as usize);
        let mut raw = vec![0u128; self.e()];
        let m = self.moduli[b] as u128;
        let up = self.up_mod(m);
        let mut v: u128 = 1 % m;
        for _ in 0..a {
            v = v * up % m;
        }
        raw[b] = v;
        self.reduce(&raw)
    }
    type Wide = ResidueElem;
    fn prepare(&self, elems: &[&ResidueElem]) -> (ResidueElem, Vec<ResidueElem>) {
        (self.one(), elems.iter().map(|c| (*c).clone()).collect())
    }
    fn wide_zero(&self) -> ResidueElem {
        self.zero()
    }
    fn wide_mul_add(&self, acc: &mut ResidueElem, a: &ResidueElem, b: &ResidueElem) {
        self.add_assign(acc, &self.mul(a, b));
    }
    fn wide_add_assign(&self, acc: &mut ResidueElem, b: &ResidueElem) {
        self.add_assign(acc, b);
    }
    fn finish(&self, acc: ResidueElem, scale: &ResidueElem) -> ResidueElem {
        if self.is_one(scale) {
            acc
        } else {
            self.mul(&acc, scale)
        }
    }
    fn meet(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(crate::error::Error::RingMismatch(format!("{} vs {}", self.params, other.params)));
        }
        Ok(if self.prec <= other.prec { self.clone() } else { other.clone() })
    }
    fn coerce(&self, a: &ResidueElem) -> ResidueElem {
        let raw: Vec<u128> = a.coords.iter().map(|c| *c as u128).collect();
        self.reduce(&raw)
    }
    fn render(&self, a: &ResidueElem) -> String {
        let parts: Vec<String> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*pi"),
                _ => format!("{c}*pi^{i}"),
            })
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("({body} mod pi^{})", self.prec)
    }
    fn to_json(&self, a: &ResidueElem) -> serde_json::Value {
        serde_json::json!({ "coords": a.coords.to_vec(), "precision": self.prec })
    }
    fn from_json(&self, v: &serde_json::Value) -> Result<ResidueElem> {
        let coords = v
            .get("coords")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("residue coefficient needs coords".into()))?;
        let raw = coords
            .iter()
            .map(|c| c.as_u64().map(u128::from).ok_or_else(|| Error::Parse("bad residue coordinate".into())))
            .collect::<Result<Vec<_>>>()?;
        if raw.len() != self.e() {
            return Err(Error::Parse("wrong number of residue coordinates".into()));
        }
        Ok(self.reduce(&raw))
    }
}

impl PiAdic for ResidueRing {
    fn quotient_ring(&self, k: u32) -> Result<Self> {
        if self.prec <= k {
            return Err(Error::PrecisionExhausted);
        }
        ResidueRing::new(self.params, self.prec - k)
    }
    fn div_pi_pow(&self, a: &ResidueElem, k: u32) -> Result<ResidueElem> {
        let mut ring = self.clone();
        let mut x = a.clone();
        for _ in 0..k {
            x = ring.div_pi_once(&x)?;
            ring = ring.quotient_ring(1)?;
        }
        Ok(x)
    }
    fn unit_inverse(&self, r: u64) -> ResidueElem {
        // Σ_k π^{rk}, finite because π^{prec} = 0.
        assert!(r >= 1);
        let mut acc = self.zero();
        let mut k = 0;
        while r * k < self.prec as u64 {
            self.add_assign(&mut acc, &self.pi_pow(r * k));
            k += 1;
        }
        acc
    }
    fn residue(&self, a: &ResidueElem) -> Result<u64> {
        if self.prec == 0 {
            return Err(Error::PrecisionExhausted);
        }
        Ok(a.coords[0] % self.params.p())
    }
}
