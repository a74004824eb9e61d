//! Morava stabilizer algebras `Σ(h)` for formal A-modules of height `h`.
//!
//! Elements are polynomials over `F_p` in `t_i` (one, two or three tensor slots)
//! with exponents in normal form for the relations `t_j^{q^h} = t_j`. The
//! structure constants all lie in the image of `Z[π]`, so `F_p` loses nothing
//! against the `F_q`-form; that algebra is the scalar extension.
//!
//! Reduced coproducts come from re-running the coproduct recursion with
//! `v_h = 1` and every other `v_j = 0`, in the truncation `Z[π]/(π^n)`. The
//! precision `n` is raised until no division runs out of digits.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::coeff::{CoeffRing, KField, PiAdic, PrimeField, ResidueRing, RingParams};
use crate::error::{Error, Result};
use crate::gpoly::{poly_to_json, FpPoly, KPoly, Monomial, Poly, Var};
use crate::hopf::{CoproductSets, RightUnit, Specialization};
use crate::report::{Check, Report};
use crate::sequences::Seq;
use crate::universal::{araki_logs_with, hazewinkel_logs_with, Convention};

/// `Σ(h)` truncated to the generators `t_1, …, t_imax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabAlgebra {
    params: RingParams,
    h: u32,
    imax: u32,
}

fn ring_json(params: &RingParams, h: u32) -> Value {
    json!({"p": params.p(), "e": params.e(), "f": params.f(), "u": params.u(), "h": h})
}

fn pow_mod(mut b: u128, mut n: u64, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        n >>= 1;
    }
    acc
}

/// Runs `f` over `Z[π]/(π^n)` for `n = start, start + 1, …` until it stops running out of precision.
///
/// Low precision keeps multinomial expansions sparse, so the smallest sufficient `n` is
/// much cheaper than any overestimate.
pub fn with_precision<T>(params: &RingParams, start: u32, f: impl Fn(&ResidueRing) -> Result<T>) -> Result<T> {
    let cap = ResidueRing::max_precision(*params);
    let mut prec = start.clamp(2, cap);
    loop {
        match f(&ResidueRing::new(*params, prec)?) {
            Err(Error::PrecisionExhausted) if prec < cap => prec += 1,
            other => return other,
        }
    }
}

impl StabAlgebra {
    pub fn new(params: &RingParams, h: u32, imax: u32) -> Result<Self> {
        if h == 0 {
            return Err(Error::OutOfRange("the height must be positive".into()));
        }
        params
            .q()
            .checked_pow(h)
            .filter(|n| *n < u32::MAX as u64)
            .ok_or_else(|| Error::OutOfRange(format!("q^h too large for h = {h}")))?;
        Ok(StabAlgebra { params: *params, h, imax })
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn height(&self) -> u32 {
        self.h
    }

    pub fn imax(&self) -> u32 {
        self.imax
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.params)
    }

    /// `q^h − 1`, the exponent period of every `t_j`.
    pub fn period(&self) -> u64 {
        self.params.q_pow(self.h) - 1
    }

    fn reduce_exp(&self, n: u128) -> u32 {
        let m = self.period() as u128;
        if n == 0 {
            0
        } else {
            ((n - 1) % m + 1) as u32
        }
    }

    /// Rewrites every `t` exponent `n ≥ 1` to `((n − 1) mod (q^h − 1)) + 1`.
    pub fn normal_form(&self, x: &FpPoly) -> FpPoly {
        x.map_monomials(|m| m.map_exponents(|v, n| if v.is_t() { self.reduce_exp(n as u128) } else { n }))
    }

    /// `x^{p^k}` in normal form: exponents scale by `p^k`, `F_p` coefficients are fixed.
    pub fn frobenius(&self, x: &FpPoly, k: u64) -> FpPoly {
        let m = self.period() as u128;
        let pk = pow_mod(self.params.p() as u128, k, m);
        x.map_monomials(|mono| {
            mono.map_exponents(|v, n| {
                if v.is_t() && n > 0 {
                    // n·p^k ≥ 1, so only its residue class matters.
                    let r = (n as u128 * pk) % m;
                    if r == 0 {
                        m as u32
                    } else {
                        r as u32
                    }
                } else {
                    n
                }
            })
        })
    }

    fn nf_mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.normal_form(&a.mul_seq(b))
    }

    fn nf_pow(&self, a: &FpPoly, mut n: u32) -> FpPoly {
        let mut acc = Poly::one(a.ring());
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.nf_mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.nf_mul(&base, &base);
            }
        }
        acc
    }

    /// Ring-map substitution followed by normal form after every product.
    fn substitute_nf(&self, x: &FpPoly, image: impl Fn(&Var) -> Option<FpPoly>) -> FpPoly {
        let fp = self.field();
        let mut cache: HashMap<(Var, u32), FpPoly> = HashMap::new();
        let mut out = Poly::zero(&fp);
        for (mono, c) in x.terms() {
            let mut term = Poly::constant(&fp, *c);
            for (v, n) in mono.pairs() {
                let factor = match image(v) {
                    Some(img) => cache.entry((*v, *n)).or_insert_with(|| self.nf_pow(&img, *n)).clone(),
                    None => Poly::monomial(&fp, Monomial::var_pow(*v, *n), 1),
                };
                term = self.nf_mul(&term, &factor);
            }
            out = &out + &term;
        }
        out
    }

    /// The defining relations `t_j^{q^h} = t_j`, `1 ≤ j ≤ imax`, as (lhs, rhs).
    pub fn relations(&self) -> Vec<(FpPoly, FpPoly)> {
        let fp = self.field();
        let n = self.params.q_pow(self.h) as u32;
        (1..=self.imax)
            .map(|j| (Poly::monomial(&fp, Monomial::var_pow(Var::t(j, 0), n), 1), Poly::var(&fp, Var::t(j, 0))))
            .collect()
    }

    fn reduced_sets<R: PiAdic>(&self, ring: &R, kmax: u32) -> Result<CoproductSets<R>> {
        let h = self.h;
        CoproductSets::build(ring, kmax, |j| if j == h { Poly::one(ring) } else { Poly::zero(ring) })
    }

    /// `b_{i,j} = w_{(j+1,…,j+1)}(Δ_i)` (`e` entries) reduced and normal-formed; 0 for `i = 0`.
    pub fn b_element(&self, i: u32, j: u32) -> Result<FpPoly> {
        if i == 0 {
            return Ok(Poly::zero(&self.field()));
        }
        let e = self.params.e();
        let seq = Seq::repeat(j + 1, e as usize);
        let raw = with_precision(&self.params, 2, |ring| {
            self.reduced_sets(ring, i)?.witt(i, &seq)?.reduce_mod_pi()
        })?;
        Ok(self.normal_form(&raw))
    }

    /// `b_{i,j}` through exact arithmetic over `K` (slow; used for cross-checks).
    pub fn b_element_exact(&self, i: u32, j: u32) -> Result<FpPoly> {
        if i == 0 {
            return Ok(Poly::zero(&self.field()));
        }
        let k = KField::new(self.params);
        let seq = Seq::repeat(j + 1, self.params.e() as usize);
        let raw = self.reduced_sets(&k, i)?.witt(i, &seq)?;
        raw.assert_integral("b element")?;
        Ok(self.normal_form(&raw.reduce_mod_pi()?))
    }

    fn primitive_part(&self, k: u32) -> FpPoly {
        let fp = self.field();
        let q = self.params.q();
        let mut out = Poly::zero(&fp);
        for i in 0..=k {
            let mut m = Monomial::one();
            if i > 0 {
                m = m.mul(&Monomial::var(Var::t(i, 0)));
            }
            if k > i {
                m = m.mul(&Monomial::var_pow(Var::t(k - i, 1), q.pow(i) as u32));
            }
            out = &out + &Poly::monomial(&fp, m, 1);
        }
        self.normal_form(&out)
    }

    /// `Σ t_i ⊗ t_{k−i}^{q^i} + b_{k−eh, h−1}`, valid for `k ≤ (e+1)h`.
    pub fn low_degree_coproduct(&self, k: u32) -> Result<FpPoly> {
        let eh = self.params.e() * self.h;
        let correction = if k > eh { self.b_element(k - eh, self.h - 1)? } else { Poly::zero(&self.field()) };
        Ok(&self.primitive_part(k) + &correction)
    }

    /// Reduced `Δ(t_1), …, Δ(t_kmax)` (index 0 is `1 ⊗ 1`) from the specialized recursion.
    pub fn coproducts(&self, kmax: u32) -> Result<Vec<FpPoly>> {
        let raw = with_precision(&self.params, 2, |ring| {
            let sets = self.reduced_sets(ring, kmax)?;
            (0..=kmax).map(|k| sets.delta(k)?.reduce_mod_pi()).collect::<Result<Vec<_>>>()
        })?;
        Ok(raw.iter().map(|d| self.normal_form(d)).collect())
    }

    /// Reduced `Δ(t_k)`; for `k ≤ (e+1)h` asserted equal to the low-degree formula.
    pub fn coproduct(&self, k: u32) -> Result<FpPoly> {
        let value = self.coproducts(k)?.pop().expect("level k");
        if k >= 1 && k <= (self.params.e() + 1) * self.h {
            let formula = self.low_degree_coproduct(k)?;
            if formula != value {
                return Err(Error::VerificationFailed(format!(
                    "reduced coproduct of t{k}: recursion {value} vs low-degree formula {formula}"
                )));
            }
        }
        Ok(value)
    }

    /// `(Δ⊗1)Δ(t_k) = (1⊗Δ)Δ(t_k)` in three-slot normal form, plus both counit laws.
    pub fn coassoc_check(&self, kmax: u32) -> Result<Report> {
        let deltas = self.coproducts(kmax)?;
        let fp = self.field();
        let base = ring_json(&self.params, self.h);
        let shifted: Vec<FpPoly> = deltas
            .iter()
            .map(|d| d.map_vars(|v| v.slot().map_or(*v, |s| v.in_slot(s + 1))))
            .collect();
        let mut report = Report::new();
        for k in 0..=kmax {
            let p = {
                let mut p = base.clone();
                p["k"] = json!(k);
                p
            };
            let d = &deltas[k as usize];
            let lhs = self.substitute_nf(&d.map_vars(|v| if v.slot() == Some(1) { v.in_slot(2) } else { *v }), |v| {
                (v.slot() == Some(0)).then(|| deltas[v.index as usize].clone())
            });
            let rhs = self.substitute_nf(d, |v| (v.slot() == Some(1)).then(|| shifted[v.index as usize].clone()));
            report.push(Check::equal(format!("stabilizer coassociativity on t{k}"), p.clone(), &lhs, &rhs));
            let t = if k == 0 { Poly::one(&fp) } else { Poly::var(&fp, Var::t(k, 0)) };
            let left = crate::hopf::counit_left(d)?;
            let right = crate::hopf::counit_right(d)?;
            report.push(Check::equal(format!("stabilizer left counit on t{k}"), p.clone(), &left, &t));
            report.push(Check::equal(format!("stabilizer right counit on t{k}"), p, &right, &t));
        }
        Ok(report)
    }
}

/// `Δ(t_k)` in `Σ(h)`.
pub fn stab_coproduct(params: &RingParams, h: u32, k: u32) -> Result<FpPoly> {
    StabAlgebra::new(params, h, k)?.coproduct(k)
}

pub fn b_element(params: &RingParams, h: u32, i: u32, j: u32) -> Result<FpPoly> {
    StabAlgebra::new(params, h, i)?.b_element(i, j)
}

pub fn stab_coassoc_check(params: &RingParams, h: u32, kmax: u32) -> Result<Report> {
    StabAlgebra::new(params, h, kmax)?.coassoc_check(kmax)
}

/// `b_{i,j}` against the Frobenius image `(b_{i,0})^{p^{dj}}`, for `i ≤ imax`, `j ≤ jmax`.
pub fn frobenius_check(params: &RingParams, h: u32, imax: u32, jmax: u32) -> Result<Report> {
    let alg = StabAlgebra::new(params, h, imax)?;
    let mut report = Report::new();
    for i in 1..=imax {
        let b0 = alg.b_element(i, 0)?;
        for j in 0..=jmax {
            let mut p = ring_json(params, h);
            p["i"] = json!(i);
            p["j"] = json!(j);
            let bij = alg.b_element(i, j)?;
            let frob = alg.frobenius(&b0, params.d() as u64 * j as u64);
            report.push(Check::equal(format!("b_({i},{j}) is the p^(dj) power of b_({i},0)"), p, &bij, &frob));
        }
    }
    Ok(report)
}

/// Exported presentation of `Σ(h)` truncated at `t_imax`.
#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub h: u32,
    pub imax: u32,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub coproducts: BTreeMap<String, Value>,
}

impl Presentation {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("presentation serializes")
    }
}

/// `η_R(v_k)` with left generators other than `v_h` set to 0, reduced mod `π`, for `k ≤ kmax`.
pub fn reduced_right_units(params: &RingParams, h: u32, kmax: u32) -> Result<Vec<FpPoly>> {
    let ru = RightUnit::compute(params, Convention::Araki, kmax, Specialization::Height(h))?;
    ru.images().iter().map(KPoly::reduce_mod_pi).collect()
}

/// Rewrites `t_j^{q^h} → v_h^{q^j − 1} t_j` for `j < below` until no exponent reaches `q^h`.
fn apply_lower_relations(params: &RingParams, h: u32, below: u32, x: &FpPoly) -> FpPoly {
    let qh = params.q_pow(h) as u32;
    let fp = PrimeField::new(*params);
    let mut out = x.clone();
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        for (m, c) in out.terms() {
            let hit = m.pairs().iter().find(|(v, n)| v.slot() == Some(0) && v.index < below && *n >= qh).copied();
            match hit {
                Some((var, _)) => {
                    changed = true;
                    let lowered = m.map_exponents(|w, n| if *w == var { n - (qh - 1) } else { n });
                    let vpow = Monomial::var_pow(Var::v(h), (params.q_pow(var.index) - 1) as u32);
                    next.push((lowered.mul(&vpow), *c));
                }
                None => next.push((m.clone(), *c)),
            }
        }
        out = Poly::from_terms(&fp, next);
        if !changed {
            return out;
        }
    }
}

/// Checks that the reduced `η_R(v_{h+i})` is, after the lower relations, a nonzero multiple of
/// `v_h t_i^{q^h} − v_h^{q^i} t_i`; returns the check.
fn relation_check(params: &RingParams, h: u32, k: u32, image: &FpPoly) -> Check {
    let fp = PrimeField::new(*params);
    let mut p = ring_json(params, h);
    p["k"] = json!(k);
    if k < h {
        return Check::new(format!("reduced right unit of v{k} vanishes"), p, image.is_zero(), Some(image.to_string()));
    }
    let v = Poly::var(&fp, Var::v(h));
    if k == h {
        return Check::equal(format!("reduced right unit of v{h} is v{h}"), p, image, &v);
    }
    let i = k - h;
    let rewritten = apply_lower_relations(params, h, i, image);
    let qh = params.q_pow(h) as u32;
    let lead = Monomial::from_pairs([(Var::v(h), 1), (Var::t(i, 0), qh)]);
    let c = rewritten.coeff(&lead);
    let shape = &(&v * &Poly::monomial(&fp, Monomial::var_pow(Var::t(i, 0), qh), 1))
        - &Poly::monomial(&fp, Monomial::from_pairs([(Var::v(h), params.q_pow(i) as u32), (Var::t(i, 0), 1)]), 1);
    let pass = c != 0 && rewritten == shape.scale(&c);
    Check::new(
        format!("relation t{i}*v{h}^(q^{i}) = v{h}*t{i}^(q^{h}) from the right unit of v{k}"),
        p,
        pass,
        Some(format!("reduced right unit after lower relations: {rewritten}")),
    )
}

/// The presentation of `Σ(h)` with generators `t_1, …, t_{kmax−h}`, and a report confirming
/// that each relation `t_i^{q^h} = t_i` (after `v_h := 1`) emerges from the reduced `η_R(v_{h+i})`.
pub fn stab_presentation(params: &RingParams, h: u32, kmax: u32) -> Result<(Presentation, Report)> {
    if kmax <= h {
        return Err(Error::OutOfRange(format!("need kmax > h (kmax = {kmax}, h = {h})")));
    }
    let imax = kmax - h;
    let alg = StabAlgebra::new(params, h, imax)?;
    let images = reduced_right_units(params, h, kmax)?;
    let mut report: Report = (1..=kmax).map(|k| relation_check(params, h, k, &images[k as usize])).collect();
    let deltas = alg.coproducts(imax)?;
    let mut coproducts = BTreeMap::new();
    for k in 1..=imax {
        coproducts.insert(format!("t{k}"), poly_to_json(&deltas[k as usize]));
        if k <= (params.e() + 1) * h {
            let mut p = ring_json(params, h);
            p["k"] = json!(k);
            report.push(Check::equal(
                format!("reduced coproduct of t{k} matches the low-degree formula"),
                p,
                &deltas[k as usize],
                &alg.low_degree_coproduct(k)?,
            ));
        }
    }
    let presentation = Presentation {
        p: params.p(),
        e: params.e(),
        f: params.f(),
        h,
        imax,
        generators: (1..=imax).map(|j| format!("t{j}")).collect(),
        relations: alg.relations().iter().map(|(l, r)| format!("{l} = {r}")).collect(),
        coproducts,
    };
    Ok((presentation, report))
}

/// `stab_coproduct(k)` against `Δ(t_k) mod I_h` with `v_h := 1`, other `v_j := 0`, normal-formed.
pub fn reduction_consistency(params: &RingParams, h: u32, k: u32) -> Result<Check> {
    let alg = StabAlgebra::new(params, h, k)?;
    let fp = alg.field();
    let mod_in = crate::hopf::coproduct_mod_in(params, k, h, params.gen_degree(k))?;
    let specialized = mod_in
        .substitute(|v| (v.family == crate::gpoly::Family::Araki).then(|| if v.index == h { Poly::one(&fp) } else { Poly::zero(&fp) }))?;
    let mut p = ring_json(params, h);
    p["k"] = json!(k);
    Ok(Check::equal(
        format!("reduced coproduct of t{k} agrees with the coproduct mod I_{h}"),
        p,
        &alg.coproduct(k)?,
        &alg.normal_form(&specialized),
    ))
}

/// Equivariant-thickening conditions for `V^A → A[V_h]` (all other generators to 0), levels `hj`, `j ≤ nmax`:
/// Hazewinkel log coefficients vanish off multiples of `h` and satisfy
/// `α_{hj} = π^{−j} (π α_h)^{(q^{hj}−1)/(q^h−1)}`; Araki log coefficients vanish off multiples of `h`;
/// and with free `x_i` (`x_i = 0` for `h ∤ i`) solving `V_k = π x_k − Σ x_i V_{k−i}^{q^i}`
/// gives `V_k = 0` for `h ∤ k`.
pub fn thickening_check(params: &RingParams, h: u32, nmax: u32) -> Result<Report> {
    if h == 0 {
        return Err(Error::OutOfRange("the height must be positive".into()));
    }
    let k = KField::new(*params);
    let n = h * nmax;
    let mut report = Report::new();
    let base = {
        let mut b = ring_json(params, h);
        b["nmax"] = json!(nmax);
        b
    };
    let only = |conv: Convention| move |i: u32| if i == h { Poly::var(&k, conv.var(i)) } else { Poly::zero(&k) };
    let haz = hazewinkel_logs_with(params, n, only(Convention::Hazewinkel))?;
    let ara = araki_logs_with(params, n, only(Convention::Araki))?;
    for i in 1..=n {
        if i % h != 0 {
            for (name, logs) in [("Hazewinkel", &haz), ("Araki", &ara)] {
                let a = &logs[i as usize];
                report.push(Check::new(
                    format!("{name} log coefficient {i} vanishes"),
                    base.clone(),
                    a.is_zero(),
                    Some(a.to_string()),
                ));
            }
        }
    }
    let pi_alpha = haz[h as usize].scale(&k.pi());
    for j in 1..=nmax {
        let qh = params.q_pow(h);
        let exponent = (params.q_pow(h * j) - 1) / (qh - 1);
        let inv = k.inv(&k.pi_pow(j as u64))?;
        let want = pi_alpha.pow(exponent).scale(&inv);
        let mut p = base.clone();
        p["j"] = json!(j);
        report.push(Check::equal(
            format!("Hazewinkel log coefficient {} follows the thickening formula", h * j),
            p,
            &haz[(h * j) as usize],
            &want,
        ));
    }
    let x = |i: u32| {
        if i % h == 0 {
            Poly::var(&k, Var::x(i, params.gen_degree(i) as u32))
        } else {
            Poly::zero(&k)
        }
    };
    let mut gens: Vec<KPoly> = vec![Poly::constant(&k, k.pi())];
    for m in 1..=n {
        let mut acc = x(m).scale(&k.pi());
        for i in 1..m {
            acc = acc.try_sub(&x(i).try_mul(&gens[(m - i) as usize].pow(params.q_pow(i)))?)?;
        }
        gens.push(acc);
    }
    for m in 1..=n {
        if m % h != 0 {
            let g = &gens[m as usize];
            report.push(Check::new(
                format!("generator {m} vanishes when log coefficients off multiples of h vanish"),
                base.clone(),
                g.is_zero(),
                Some(g.to_string()),
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::make_ring;

    fn t(fp: &PrimeField, i: u32, s: u8, n: u32) -> FpPoly {
        Poly::monomial(fp, Monomial::var_pow(Var::t(i, s), n), 1)
    }

    #[test]
    fn normal_form_examples() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let alg = StabAlgebra::new(&params, 2, 3).unwrap();
        let fp = alg.field();
        assert_eq!(alg.normal_form(&t(&fp, 1, 0, 9)), t(&fp, 1, 0, 1));
        assert_eq!(alg.normal_form(&t(&fp, 1, 0, 10)), t(&fp, 1, 0, 2));
        assert_eq!(alg.normal_form(&Poly::one(&fp)), Poly::one(&fp));
        assert_eq!(alg.frobenius(&t(&fp, 1, 0, 1), 2), t(&fp, 1, 0, 1));
    }

    #[test]
    fn first_b_element() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let alg = StabAlgebra::new(&params, 1, 2).unwrap();
        let fp = alg.field();
        let want = (&(&t(&fp, 1, 0, 2) * &t(&fp, 1, 1, 1)) + &(&t(&fp, 1, 0, 1) * &t(&fp, 1, 1, 2))).neg();
        assert_eq!(alg.b_element(1, 0).unwrap(), want);
        assert_eq!(alg.b_element_exact(1, 0).unwrap(), want);
    }

    #[test]
    fn second_coproduct_at_height_one() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let alg = StabAlgebra::new(&params, 1, 2).unwrap();
        let fp = alg.field();
        let mono = |pairs: &[(u32, u8, u32)]| {
            Poly::monomial(&fp, Monomial::from_pairs(pairs.iter().map(|&(i, s, n)| (Var::t(i, s), n))), 1)
        };
        let want = &(&(&mono(&[(2, 0, 1)]) + &mono(&[(1, 0, 1), (1, 1, 3)])) + &mono(&[(2, 1, 1)]))
            - &(&mono(&[(1, 0, 2), (1, 1, 1)]) + &mono(&[(1, 0, 1), (1, 1, 2)]));
        assert_eq!(alg.coproduct(2).unwrap(), alg.normal_form(&want));
        let rel = alg.relations();
        assert_eq!(rel[0].0.to_string(), "t1^3");
    }

    #[test]
    fn truncated_and_exact_b_agree() {
        for (e, imax, jmax) in [(1, 2, 1), (2, 2, 0)] {
            let params = make_ring(3, e, 1, 1).unwrap();
            let alg = StabAlgebra::new(&params, 1, imax).unwrap();
            for i in 0..=imax {
                for j in 0..=jmax {
                    assert_eq!(alg.b_element(i, j).unwrap(), alg.b_element_exact(i, j).unwrap(), "e={e} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn primitive_below_height() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let fp = PrimeField::new(params);
        let d1 = stab_coproduct(&params, 2, 1).unwrap();
        assert_eq!(d1, &t(&fp, 1, 0, 1) + &t(&fp, 1, 1, 1));
        let r = stab_coassoc_check(&params, 2, 2).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn thickening_small() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let r = thickening_check(&params, 2, 2).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(r.checks.len() > 4);
    }
}
