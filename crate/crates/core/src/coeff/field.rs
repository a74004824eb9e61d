use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::{smallvec, SmallVec};

use super::{CoeffRing, PiAdic, RingParams, Valuation};
use crate::error::{Error, Result};

/// Element of `K = Q[π]/(π^e − u·p)`: rational coordinates on `1, π, …, π^{e−1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KElement {
    coords: SmallVec<[BigRational; 2]>,
}

impl KElement {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// The field `K` itself; a copyable context carrying the ring parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KField {
    params: RingParams,
}

/// `ν_p` of a nonzero integer.
pub(crate) fn p_val_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub(crate) fn p_val_rat(r: &BigRational, p: u64) -> i64 {
    p_val_int(r.numer(), p) - p_val_int(r.denom(), p)
}

/// `x mod m` for a `p`-integral rational, as an integer in `[0, m)`.
pub(crate) fn rat_mod(r: &BigRational, m: u64) -> Option<u64> {
    let m_big = BigInt::from(m);
    let num = r.numer().mod_floor(&m_big).to_u64()?;
    let den = r.denom().mod_floor(&m_big).to_u64()?;
    let inv = mod_inverse(den, m)?;
    Some(((num as u128 * inv as u128) % m as u128) as u64)
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Division with remainder in `Q[x]`, coefficients low to high; `b` nonzero and trimmed.
fn qpoly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let k = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quo[k] = c;
        trim(&mut rem);
    }
    (quo, rem)
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl KField {
    pub fn new(params: RingParams) -> Self {
        KField { params }
    }

    fn e(&self) -> usize {
        self.params.e() as usize
    }

    /// Element with the given coordinates (padded with zeros to length `e`).
    pub fn element(&self, coords: Vec<BigRational>) -> Result<KElement> {
        if coords.len() > self.e() {
            return Err(Error::Parse(format!("{} coordinates for e = {}", coords.len(), self.e())));
        }
        let mut c: SmallVec<[BigRational; 2]> = coords.into_iter().collect();
        c.resize(self.e(), BigRational::zero());
        Ok(KElement { coords: c })
    }

    pub fn from_rational(&self, r: BigRational) -> KElement {
        let mut c: SmallVec<[BigRational; 2]> = smallvec![BigRational::zero(); self.e()];
        c[0] = r;
        KElement { coords: c }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> KElement {
        self.from_rational(BigRational::new(num.into(), den.into()))
    }

    /// The uniformizer π.
    pub fn pi(&self) -> KElement {
        self.pi_pow(1)
    }

    /// `Π_A(h) = π − π^{q^h}` for `h ≥ 1`.
    pub fn pi_a(&self, h: u32) -> KElement {
        self.sub(&self.pi(), &self.pi_pow(self.params.q_pow(h)))
    }

    fn to_qpoly(&self, a: &KElement) -> Vec<BigRational> {
        let mut v = a.coords.to_vec();
        trim(&mut v);
        v
    }

    fn from_qpoly(&self, v: &[BigRational]) -> KElement {
        // Fold x^k, k ≥ e, down with x^e = u·p.
        let e = self.e();
        let up = BigRational::from_integer(self.params.up());
        let mut acc: Vec<BigRational> = v.to_vec();
        for k in (e..acc.len()).rev() {
            let c = std::mem::take(&mut acc[k]);
            if !c.is_zero() {
                acc[k - e] += c * &up;
            }
        }
        acc.resize(e, BigRational::zero());
        KElement { coords: acc.into_iter().collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self, a: &KElement) -> Result<KElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.e() == 1 {
            return Ok(self.from_rational(a.coords[0].recip()));
        }
        let mut modulus = vec![BigRational::zero(); self.e() + 1];
        modulus[0] = -BigRational::from_integer(self.params.up());
        modulus[self.e()] = BigRational::one();
        let (mut r0, mut r1) = (modulus, self.to_qpoly(a));
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (quo, rem) = qpoly_divmod(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&quo, &s1));
            (r0, r1) = (r1, rem);
            (s0, s1) = (s1, s2);
        }
        // The modulus is Eisenstein, hence irreducible: the gcd is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let s: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        Ok(self.from_qpoly(&s))
    }

    pub fn div(&self, a: &KElement, b: &KElement) -> Result<KElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `ν_π(a)`, normalized by `ν_π(π) = 1`.
    pub fn valuation(&self, a: &KElement) -> Valuation {
        let e = self.params.e() as i64;
        a.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| e * p_val_rat(c, self.params.p()) + i as i64)
            .min()
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    /// Image in `F_p` of an element of non-negative valuation.
    pub fn reduce_mod_pi(&self, a: &KElement) -> Result<u64> {
        if let Valuation::Finite(v) = self.valuation(a) {
            if v < 0 {
                return Err(Error::NegativeValuation(v));
            }
        }
        Ok(rat_mod(&a.coords[0], self.params.p()).expect("p-integral coordinate"))
    }

    /// `"num/den"` strings, one per coordinate.
    pub fn to_strings(&self, a: &KElement) -> Vec<String> {
        a.coords.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn parse_coords<S: AsRef<str>>(&self, items: &[S]) -> Result<KElement> {
        let coords = items
            .iter()
            .map(|s| {
                let s = s.as_ref().trim();
                s.parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(coords)
    }
}

impl CoeffRing for KField {
    type Elem = KElement;

    fn params(&self) -> RingParams {
        self.params
    }
    fn zero(&self) -> KElement {
        KElement { coords: smallvec![BigRational::zero(); self.e()] }
    }
    fn from_i64(&self, n: i64) -> KElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }
    fn is_zero(&self, a: &KElement) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, a: &mut KElement, b: &KElement) {
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
    fn neg(&self, a: &KElement) -> KElement {
        KElement { coords: a.coords.iter().map(|c| -c).collect() }
    }
    fn mul(&self, a: &KElement, b: &KElement) -> KElement {
        let e = self.e();
        if e == 1 {
            return KElement { coords: smallvec![&a.coords[0] * &b.coords[0]] };
        }
        let mut acc = vec![BigRational::zero(); 2 * e - 1];
        for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                acc[i + j] += x * y;
            }
        }
        self.from_qpoly(&acc)
    }
    fn pi_pow(&self, n: u64) -> KElement {
        let e = self.e() as u64;
        let (a, b) = (n / e, (n % e) as usize);
        let mut c: SmallVec<[BigRational; 2]> = smallvec![BigRational::zero(); self.e()];
        let a: u32 = a.try_into().expect("exponent of pi too large");
        c[b] = BigRational::from_integer(num_traits::pow::Pow::pow(self.params.up(), a));
        KElement { coords: c }
    }
    /// Integer coordinates over a common denominator; the accumulator holds the
    /// unreduced convolution (length `2e − 1`), so products need no gcds.
    type Wide = SmallVec<[BigInt; 3]>;
    fn prepare(&self, elems: &[&KElement]) -> (KElement, Vec<Self::Wide>) {
        let mut den = BigInt::one();
        for c in elems.iter().flat_map(|x| x.coords.iter()) {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let wide = elems
            .iter()
            .map(|x| x.coords.iter().map(|c| c.numer() * (&den / c.denom())).collect())
            .collect();
        (self.from_rational(BigRational::new(BigInt::one(), den)), wide)
    }
    fn wide_zero(&self) -> Self::Wide {
        smallvec![BigInt::zero(); 2 * self.e() - 1]
    }
    fn wide_mul_add(&self, acc: &mut Self::Wide, a: &Self::Wide, b: &Self::Wide) {
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                acc[i + j] += x * y;
            }
        }
    }
    fn wide_add_assign(&self, acc: &mut Self::Wide, b: &Self::Wide) {
        for (x, y) in acc.iter_mut().zip(b) {
            *x += y;
        }
    }
    fn finish(&self, mut acc: Self::Wide, scale: &KElement) -> KElement {
        let e = self.e();
        let up = self.params.up();
        for k in (e..acc.len()).rev() {
            let c = std::mem::take(&mut acc[k]);
            if !c.is_zero() {
                acc[k - e] += c * &up;
            }
        }
        acc.truncate(e);
        if scale.coords.iter().skip(1).all(Zero::is_zero) {
            let s = &scale.coords[0];
            KElement { coords: acc.into_iter().map(|c| BigRational::from_integer(c) * s).collect() }
        } else {
            let raw = KElement { coords: acc.into_iter().map(BigRational::from_integer).collect() };
            self.mul(&raw, scale)
        }
    }
    fn render(&self, a: &KElement) -> String {
        let parts: Vec<String> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let power = if i == 1 { "pi".to_string() } else { format!("pi^{i}") };
                match i {
                    0 => fmt_rat(c),
                    _ if c.is_one() => power,
                    _ if (-c).is_one() => format!("-{power}"),
                    _ => format!("{}*{power}", fmt_rat(c)),
                }
            })
            .collect();
        match parts.len() {
            0 => "0".into(),
            1 => parts.into_iter().next().unwrap(),
            _ => {
                let mut s = parts[0].clone();
                for p in &parts[1..] {
                    match p.strip_prefix('-') {
                        Some(rest) => s.push_str(&format!(" - {rest}")),
                        None => s.push_str(&format!(" + {p}")),
                    }
                }
                format!("({s})")
            }
        }
    }
    fn to_json(&self, a: &KElement) -> serde_json::Value {
        serde_json::Value::from(self.to_strings(a))
    }
    fn from_json(&self, v: &serde_json::Value) -> Result<KElement> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse("coefficient must be an array of rationals".into()))?
            .iter()
            .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| Error::Parse("rational must be a string".into())))
            .collect::<Result<Vec<_>>>()?;
        if items.len() != self.e() {
            return Err(Error::Parse(format!("expected {} coordinates, got {}", self.e(), items.len())));
        }
        self.parse_coords(&items)
    }
}

impl PiAdic for KField {
    fn quotient_ring(&self, _k: u32) -> Result<Self> {
        Ok(*self)
    }
    fn div_pi_pow(&self, a: &KElement, k: u32) -> Result<KElement> {
        // π^{-1} = π^{e−1}/(u·p), so π^{-k} = π^{ke − k}/(u·p)^k.
        let e = self.e() as u64;
        let num = self.pi_pow((e - 1) * k as u64);
        let den = num_traits::pow::Pow::pow(self.params.up(), k);
        let scaled = KElement { coords: num.coords.iter().map(|c| c / &den).collect() };
        Ok(self.mul(a, &scaled))
    }
    fn unit_inverse(&self, r: u64) -> KElement {
        let unit = self.sub(&self.one(), &self.pi_pow(r));
        self.inv(&unit).expect("1 − π^r is a unit")
    }
    fn residue(&self, a: &KElement) -> Result<u64> {
        self.reduce_mod_pi(a)
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "[{}]", strs.join(", "))
    }
}

impl KField {
    /// Sign of the leading rational coordinate; used only for deterministic rendering.
    pub fn is_negative(&self, a: &KElement) -> bool {
        a.coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())
    }
}
