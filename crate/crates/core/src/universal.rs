//! The universal A-typical formal A-module law: logarithm coefficients in the
//! Araki and Hazewinkel generators, conversion between the two, formal sums,
//! negation and strict-isomorphism coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffRing, KField, RingParams};
use crate::error::{Error, Result};
use crate::gpoly::{Family, KPoly, Poly, PowerSeries, QTypicalSeries, Var};
use crate::sequences::{indexed_monomial, indexed_product, pi_a_seq, Seq};
use crate::witt::WittEvaluator;

/// Which polynomial generators of the base ring are in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Araki,
    Hazewinkel,
}

impl Convention {
    pub fn var(self, i: u32) -> Var {
        match self {
            Convention::Araki => Var::v(i),
            Convention::Hazewinkel => Var::big_v(i),
        }
    }

    pub fn family(self) -> Family {
        match self {
            Convention::Araki => Family::Araki,
            Convention::Hazewinkel => Family::Hazewinkel,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Araki => "araki",
            Convention::Hazewinkel => "hazewinkel",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "araki" => Ok(Convention::Araki),
            "hazewinkel" => Ok(Convention::Hazewinkel),
            _ => Err(Error::Parse(format!("unknown convention {s:?}"))),
        }
    }
}

/// Logarithm coefficients `ℓ_0 = 1, ℓ_1, …, ℓ_n` over `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries {
    params: RingParams,
    convention: Convention,
    coeffs: Vec<KPoly>,
}

impl LogSeries {
    pub fn new(params: RingParams, convention: Convention, coeffs: Vec<KPoly>) -> Self {
        LogSeries { params, convention, coeffs }
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn field(&self) -> KField {
        KField::new(self.params)
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn coeffs(&self) -> &[KPoly] {
        &self.coeffs
    }

    pub fn get(&self, h: usize) -> &KPoly {
        &self.coeffs[h]
    }

    /// Highest computed index `n`.
    pub fn level(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn as_series(&self) -> QTypicalSeries<KField> {
        QTypicalSeries::new(&self.field(), self.coeffs.clone())
    }

    /// Applies a ring map of the base ring to every coefficient.
    pub fn map(&self, f: impl Fn(&KPoly) -> Result<KPoly>) -> Result<LogSeries> {
        Ok(LogSeries {
            params: self.params,
            convention: self.convention,
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

/// Araki recursion with the generator `v_i` replaced by `gen(i)`.
///
/// `π ℓ_h = Σ_{i=0}^{h} ℓ_i v_{h−i}^{q^i}` with `v_0 = π`: the `i = h` term is
/// `ℓ_h π^{q^h}`, so `ℓ_h` appears on both sides and is isolated by dividing by
/// `π − π^{q^h}`.
pub fn araki_logs_with(params: &RingParams, n: u32, gen: impl Fn(u32) -> KPoly) -> Result<Vec<KPoly>> {
    let k = KField::new(*params);
    let mut logs = vec![Poly::one(&k)];
    for h in 1..=n {
        let mut acc = Poly::zero(&k);
        for i in 0..h {
            let term = logs[i as usize].try_mul(&gen(h - i).pow(params.q_pow(i)))?;
            acc = acc.try_add(&term)?;
        }
        logs.push(acc.div_pi_a(h)?);
    }
    Ok(logs)
}

/// Hazewinkel recursion `π ℓ_h = Σ_{i<h} ℓ_i V_{h−i}^{q^i}` with `V_i ↦ gen(i)`.
pub fn hazewinkel_logs_with(params: &RingParams, n: u32, gen: impl Fn(u32) -> KPoly) -> Result<Vec<KPoly>> {
    let k = KField::new(*params);
    let mut logs = vec![Poly::one(&k)];
    for h in 1..=n {
        let mut acc = Poly::zero(&k);
        for i in 0..h {
            let term = logs[i as usize].try_mul(&gen(h - i).pow(params.q_pow(i)))?;
            acc = acc.try_add(&term)?;
        }
        logs.push(acc.div_pi_pow(1)?);
    }
    Ok(logs)
}

pub fn araki_logs(params: &RingParams, n: u32) -> LogSeries {
    let k = KField::new(*params);
    let coeffs = araki_logs_with(params, n, |i| Poly::var(&k, Var::v(i))).expect("exact field arithmetic");
    LogSeries::new(*params, Convention::Araki, coeffs)
}

pub fn hazewinkel_logs(params: &RingParams, n: u32) -> LogSeries {
    let k = KField::new(*params);
    let coeffs = hazewinkel_logs_with(params, n, |i| Poly::var(&k, Var::big_v(i))).expect("exact field arithmetic");
    LogSeries::new(*params, Convention::Hazewinkel, coeffs)
}

pub fn logs(params: &RingParams, n: u32, convention: Convention) -> LogSeries {
    match convention {
        Convention::Araki => araki_logs(params, n),
        Convention::Hazewinkel => hazewinkel_logs(params, n),
    }
}

/// `ℓ_h = Σ_{‖I‖=h} v_I / Π_A(I)`, summed over all compositions of `h`.
pub fn closed_form_logs(params: &RingParams, n: u32) -> LogSeries {
    let k = KField::new(*params);
    let mut coeffs = vec![Poly::one(&k)];
    for h in 1..=n {
        let mut acc = Poly::zero(&k);
        for seq in Seq::compositions(h) {
            let inv = k.inv(&pi_a_seq(params, &seq)).expect("Π_A(I) is nonzero");
            acc = &acc + &indexed_monomial(&k, &seq, Var::v).scale(&inv);
        }
        coeffs.push(acc);
    }
    LogSeries::new(*params, Convention::Araki, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// Express each `v_i` through `V_1, …, V_i`.
    ArakiToHazewinkel,
    /// Express each `V_i` through `v_1, …, v_i`.
    HazewinkelToAraki,
}

/// Substitution table `i ↦ image of the i-th generator`, for `1 ≤ i ≤ n`.
///
/// Both generator systems describe the same logarithm; the table solves one
/// recursion using the other's `ℓ_h` triangularly.
pub fn generator_conversion(params: &RingParams, n: u32, direction: Direction) -> Result<BTreeMap<u32, KPoly>> {
    let k = KField::new(*params);
    let (source_logs, divisor_is_pi_a) = match direction {
        Direction::ArakiToHazewinkel => (hazewinkel_logs(params, n), true),
        Direction::HazewinkelToAraki => (araki_logs(params, n), false),
    };
    let mut table: BTreeMap<u32, KPoly> = BTreeMap::new();
    for h in 1..=n {
        let lead = if divisor_is_pi_a { k.pi_a(h) } else { k.pi() };
        let mut acc = source_logs.get(h as usize).scale(&lead);
        for i in 1..h {
            let t = source_logs.get(i as usize).try_mul(&table[&(h - i)].pow(params.q_pow(i)))?;
            acc = acc.try_sub(&t)?;
        }
        table.insert(h, acc);
    }
    Ok(table)
}

/// A formal group law presented by its logarithm, with a lazily reversed exponential.
pub struct Fgl {
    logs: LogSeries,
    exp: Mutex<Option<PowerSeries<KField>>>,
}

impl Fgl {
    pub fn new(logs: LogSeries) -> Fgl {
        Fgl { logs, exp: Mutex::new(None) }
    }

    pub fn logs(&self) -> &LogSeries {
        &self.logs
    }

    fn field(&self) -> KField {
        self.logs.field()
    }

    /// The exponential modulo `X^order`; needs every `ℓ_k` with `q^k < order`.
    pub fn exp_series(&self, order: u64) -> Result<PowerSeries<KField>> {
        let q = self.logs.params.q();
        if q.checked_pow(self.logs.level() + 1).is_some_and(|next| next < order) {
            return Err(Error::OutOfRange(format!(
                "exponential to order {order} needs logarithm coefficients beyond level {}",
                self.logs.level()
            )));
        }
        let mut guard = self.exp.lock().expect("exp cache poisoned");
        if let Some(s) = guard.as_ref() {
            if s.order() >= order {
                return Ok(s.truncated(order));
            }
        }
        let s = self.logs.as_series().to_power_series(order).reverse()?;
        *guard = Some(s.clone());
        Ok(s)
    }

    fn check_level(&self, lo: u64, d: u64) -> Result<()> {
        let next = self.logs.params.q().checked_pow(self.logs.level() + 1);
        if lo == 0 || next.is_some_and(|qn| lo.saturating_mul(qn) <= d) {
            return Err(Error::OutOfRange(format!(
                "logarithm level {} is too low for arguments of degree {lo} at bound {d}",
                self.logs.level()
            )));
        }
        Ok(())
    }

    /// `log_F(arg)` truncated at `d`.
    pub fn log_of(&self, arg: &KPoly, d: u64) -> Result<KPoly> {
        let Some((lo, _)) = arg.degree_range() else { return Ok(Poly::zero(&self.field()).truncate(d)) };
        self.check_level(lo, d)?;
        self.logs.as_series().substitute(arg, d)
    }

    /// `exp_F(y)` truncated at `d`.
    pub fn exp_of(&self, y: &KPoly, d: u64) -> Result<KPoly> {
        let Some((lo, _)) = y.degree_range() else { return Ok(Poly::zero(&self.field()).truncate(d)) };
        if lo == 0 {
            return Err(Error::OutOfRange("exponential of an element with a degree-0 term".into()));
        }
        self.exp_series(d / lo + 1)?.substitute(y, d)
    }

    /// The formal sum `exp_F(Σ log_F(a_i))`, truncated at `d`.
    pub fn sum(&self, args: &[KPoly], d: u64) -> Result<KPoly> {
        let mut total = Poly::zero(&self.field()).truncate(d);
        for a in args {
            total = total.try_add(&self.log_of(a, d)?)?;
        }
        self.exp_of(&total, d)
    }
}

/// `Σ^F args`, truncated at `d`, for the law with logarithm `logs`.
pub fn fgl_sum(logs: &LogSeries, args: &[KPoly], d: u64) -> Result<KPoly> {
    Fgl::new(logs.clone()).sum(args, d)
}

/// Result of evaluating a formal sum through Witt polynomials.
#[derive(Clone, Debug)]
pub struct StructuredSum {
    /// The sets `B_h`, keyed by level `h ≥ 1`.
    pub levels: BTreeMap<u32, Vec<KPoly>>,
    /// `Σ^F_h w_()(B_h)`.
    pub sum: KPoly,
}

/// Regroups `Σ^F_{h,i} a_{h,i}` (with `a_{h,i}` homogeneous of degree `2(q^h − 1)`)
/// as `Σ^F_h w_()(B_h)`, where `B_h = A_h ∪ {v_J · w_J(B_{h−‖J‖}) : 0 < ‖J‖ < h}`.
pub fn structured_formal_sum(fgl: &Fgl, sets: &BTreeMap<u32, Vec<KPoly>>, d: u64) -> Result<StructuredSum> {
    if fgl.logs.convention != Convention::Araki {
        return Err(Error::Unsupported("structured formal sums are expressed in Araki generators".into()));
    }
    let params = fgl.logs.params;
    let k = fgl.field();
    for (h, elems) in sets {
        let want = params.gen_degree(*h);
        for a in elems {
            if let Some((lo, hi)) = a.degree_range() {
                if lo != want || hi != want {
                    return Err(Error::Inhomogeneous(format!("element {a} at level {h} is not of degree {want}")));
                }
            }
        }
    }
    let top = (1..).take_while(|h| params.gen_degree(*h) <= d).last().unwrap_or(0);
    let mut levels: BTreeMap<u32, Vec<KPoly>> = BTreeMap::new();
    let mut evals: BTreeMap<u32, WittEvaluator<KField>> = BTreeMap::new();
    for h in 1..=top {
        let mut b: Vec<KPoly> = sets.get(&h).cloned().unwrap_or_default();
        for m in 1..h {
            for seq in Seq::compositions(m) {
                let ev = evals.get_mut(&(h - m)).expect("lower level computed");
                let w = ev.w(&seq)?;
                if !w.is_zero() {
                    b.push(indexed_monomial(&k, &seq, Var::v).try_mul(&w)?);
                }
            }
        }
        evals.insert(h, WittEvaluator::new(&k, b.clone()));
        levels.insert(h, b);
    }
    let heads: Vec<KPoly> = levels.values().map(|b| Poly::sum(&k, b.iter())).collect::<Result<_>>()?;
    let sum = fgl.sum(&heads, d)?;
    Ok(StructuredSum { levels, sum })
}

/// The formal inverse `[−1]_F(X) = −X`, confirmed on a test variable up to degree `d`.
///
/// Holds because the logarithm is odd when `q` is odd; rejected at `p = 2`.
pub fn negation(fgl: &Fgl, d: u64) -> Result<QTypicalSeries<KField>> {
    let params = fgl.logs.params;
    if params.p() == 2 {
        return Err(Error::Unsupported("[-1](X) = -X fails at p = 2".into()));
    }
    let k = fgl.field();
    let x = Poly::var(&k, Var::x(1, params.gen_degree(1) as u32));
    let s = fgl.sum(&[x.clone(), x.neg()], d)?;
    if !s.is_zero() {
        return Err(Error::VerificationFailed(format!("x +F (-x) = {s}")));
    }
    Ok(QTypicalSeries::new(&k, vec![Poly::from_int(&k, -1)]))
}

/// Coefficients `t_0 = 1, t_1, …, t_n` of the strict isomorphism `f(X) = Σ^F t_i X^{q^i}`
/// with `log_G(X) = log_F(f(X))`:
/// `t_i = ℓ^G_i − Σ_{j<i} ℓ^F_{i−j} t_j^{q^{i−j}}`.
pub fn strict_iso_coeffs(log_f: &[KPoly], log_g: &[KPoly], n: usize) -> Result<Vec<KPoly>> {
    if log_f.len() <= n || log_g.len() <= n {
        return Err(Error::OutOfRange(format!("need logarithm coefficients up to index {n}")));
    }
    if !log_f[0].is_one() || !log_g[0].is_one() {
        return Err(Error::OutOfRange("logarithms must be strict (leading coefficient 1)".into()));
    }
    let k = log_f[0].ring().clone();
    let q = k.params().q();
    let mut t = vec![Poly::one(&k)];
    for i in 1..=n {
        let mut acc = log_g[i].clone();
        for (j, tj) in t.iter().enumerate() {
            acc = acc.try_sub(&log_f[i - j].try_mul(&tj.pow(q.pow((i - j) as u32)))?)?;
        }
        t.push(acc);
    }
    Ok(t)
}

/// `x_I = x_{i_1} (x_{I'''})^{q^{i_1}}` for the images `x_i` of a generator table.
pub fn indexed_image(k: &KField, seq: &Seq, images: &[KPoly]) -> KPoly {
    indexed_product(k, seq, |i| images[i as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::make_ring;

    fn ring(p: i64, e: i64) -> (RingParams, KField) {
        let params = make_ring(p, e, 1, 1).unwrap();
        (params, KField::new(params))
    }

    #[test]
    fn araki_examples() {
        let (params, k) = ring(3, 1);
        let logs = araki_logs(&params, 2);
        let v = |i| Poly::var(&k, Var::v(i));
        let inv = |x| k.inv(&x).unwrap();
        assert!(logs.get(0).is_one());
        assert_eq!(logs.get(1), &v(1).scale(&inv(k.pi_a(1))));
        let l2 = &v(2).scale(&inv(k.pi_a(2)))
            + &v(1).pow(1 + params.q()).scale(&inv(k.mul(&k.pi_a(2), &k.pi_a(1))));
        assert_eq!(logs.get(2), &l2);
    }

    #[test]
    fn hazewinkel_examples() {
        let (params, k) = ring(3, 2);
        let logs = hazewinkel_logs(&params, 2);
        let big = |i| Poly::var(&k, Var::big_v(i));
        let ipi = k.inv(&k.pi()).unwrap();
        assert_eq!(logs.get(1), &big(1).scale(&ipi));
        let l2 = &big(2).scale(&ipi) + &big(1).pow(1 + params.q()).scale(&k.mul(&ipi, &ipi));
        assert_eq!(logs.get(2), &l2);
    }

    #[test]
    fn closed_form_matches_recursion() {
        for (p, e) in [(3, 1), (3, 2)] {
            let (params, _) = ring(p, e);
            assert_eq!(closed_form_logs(&params, 4).coeffs(), araki_logs(&params, 4).coeffs());
        }
    }

    #[test]
    fn generator_tables() {
        let (params, k) = ring(3, 2);
        let to_v = generator_conversion(&params, 3, Direction::ArakiToHazewinkel).unwrap();
        let to_a = generator_conversion(&params, 3, Direction::HazewinkelToAraki).unwrap();
        let unit = k.sub(&k.one(), &k.pi_pow(params.q() - 1));
        assert_eq!(to_v[&1], Poly::var(&k, Var::big_v(1)).scale(&unit));
        assert_eq!(to_v[&1].reduce_mod_pi().unwrap(), Poly::var(&k, Var::big_v(1)).reduce_mod_pi().unwrap());
        for i in 1..=3 {
            let back = to_v[&i].substitute(|x| (x.family == Family::Hazewinkel).then(|| to_a[&x.index].clone())).unwrap();
            assert_eq!(back, Poly::var(&k, Var::v(i)));
        }
    }

    #[test]
    fn formal_sums() {
        let (params, k) = ring(3, 1);
        let logs = araki_logs(&params, 2);
        let y = Poly::var(&k, Var::x(1, 2));
        let z = Poly::var(&k, Var::x(2, 2));
        assert_eq!(fgl_sum(&logs, std::slice::from_ref(&y), 30).unwrap().exact(), y);
        assert_eq!(fgl_sum(&logs, &[y.clone(), Poly::zero(&k)], 30).unwrap().exact(), y);
        let q = params.q();
        let cross = &(&(&y + &z).pow(q) - &y.pow(q)) - &z.pow(q);
        let want = &(&y + &z) - &(logs.get(1) * &cross);
        assert_eq!(fgl_sum(&logs, &[y, z], 4 * q - 2).unwrap().exact(), want);

        let fgl = Fgl::new(logs.clone());
        let a = Poly::var(&k, Var::x(1, params.gen_degree(1) as u32));
        let b = Poly::var(&k, Var::x(2, params.gen_degree(1) as u32));
        let sets = BTreeMap::from([(1, vec![a.clone(), b.clone()])]);
        let s = structured_formal_sum(&fgl, &sets, 40).unwrap();
        assert_eq!(s.sum, fgl.sum(&[a, b], 40).unwrap());
    }

    #[test]
    fn negation_and_isomorphisms() {
        let (params, k) = ring(3, 1);
        let fgl = Fgl::new(araki_logs(&params, 2));
        assert_eq!(negation(&fgl, 30).unwrap().coeffs(), &[Poly::from_int(&k, -1)]);
        let (p2, _) = ring(2, 1);
        assert!(negation(&Fgl::new(araki_logs(&p2, 2)), 10).is_err());
        let l = araki_logs(&params, 3);
        let t = strict_iso_coeffs(l.coeffs(), l.coeffs(), 3).unwrap();
        assert!(t[0].is_one() && t[1..].iter().all(Poly::is_zero));
    }
}
