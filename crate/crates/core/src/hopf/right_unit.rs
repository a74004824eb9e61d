//! The right unit `η_R` on logarithms and on generators.

use crate::coeff::{CoeffRing, KField, RingParams};
use crate::error::Result;
use crate::gpoly::{KPoly, Poly, Var};
use crate::sequences::Seq;
use crate::universal::{indexed_image, logs, Convention, LogSeries};
use crate::witt::WittEvaluator;

/// Which left generators survive; `Height(h)` keeps only the `h`-th (others map to 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Specialization {
    Universal,
    Height(u32),
}

impl Specialization {
    fn keeps(self, i: u32) -> bool {
        match self {
            Specialization::Universal => true,
            Specialization::Height(h) => i == h,
        }
    }
}

/// `η_R(ℓ_i) = Σ_{j≤i} ℓ_j t_{i−j}^{q^j}` for the given left logarithm (`t_0 = 1`).
pub fn eta_r_logs_of(logs: &LogSeries) -> Result<Vec<KPoly>> {
    let params = logs.params();
    let k = logs.field();
    let t = |i: u32| if i == 0 { Poly::one(&k) } else { Poly::var(&k, Var::t(i, 0)) };
    let mut out = Vec::with_capacity(logs.coeffs().len());
    for i in 0..=logs.level() {
        let mut acc = Poly::zero(&k);
        for j in 0..=i {
            acc = acc.try_add(&logs.get(j as usize).try_mul(&t(i - j).pow(params.q_pow(j)))?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn eta_r_logs(params: &RingParams, n: u32, convention: Convention) -> Result<Vec<KPoly>> {
    eta_r_logs_of(&logs(params, n, convention))
}

/// `η_R` on the generators `v_0 = π, v_1, …, v_n` (or `V_i`), solved triangularly
/// from the logarithm relation and checked integral.
#[derive(Clone, Debug)]
pub struct RightUnit {
    params: RingParams,
    convention: Convention,
    eta_logs: Vec<KPoly>,
    images: Vec<KPoly>,
}

impl RightUnit {
    pub fn compute(params: &RingParams, convention: Convention, n: u32, spec: Specialization) -> Result<RightUnit> {
        let k = KField::new(*params);
        let base = logs(params, n, convention);
        let base = match spec {
            Specialization::Universal => base,
            Specialization::Height(_) => base.map(|l| {
                l.substitute(|v| {
                    (v.family == convention.family() && !spec.keeps(v.index)).then(|| Poly::zero(&k))
                })
            })?,
        };
        let eta_logs = eta_r_logs_of(&base)?;
        let mut images = vec![Poly::constant(&k, k.pi())];
        for h in 1..=n {
            let lead = match convention {
                Convention::Araki => k.pi_a(h),
                Convention::Hazewinkel => k.pi(),
            };
            let mut acc = eta_logs[h as usize].scale(&lead);
            for i in 1..h {
                let t = eta_logs[i as usize].try_mul(&images[(h - i) as usize].pow(params.q_pow(i)))?;
                acc = acc.try_sub(&t)?;
            }
            acc.assert_integral(&format!("right unit of generator {h} ({convention})"))?;
            images.push(acc);
        }
        Ok(RightUnit { params: *params, convention, eta_logs, images })
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// `η_R` of the `h`-th generator (`h = 0` gives `π`).
    pub fn image(&self, h: u32) -> &KPoly {
        &self.images[h as usize]
    }

    pub fn images(&self) -> &[KPoly] {
        &self.images
    }

    pub fn eta_logs(&self) -> &[KPoly] {
        &self.eta_logs
    }
}

/// `η_R(v_k)` (or `η_R(V_k)`), integral by construction.
pub fn eta_r_v(params: &RingParams, k: u32, convention: Convention) -> Result<KPoly> {
    Ok(RightUnit::compute(params, convention, k, Specialization::Universal)?.image(k).clone())
}

/// A set of tensor-valued elements all of degree `2(q^level − 1)`.
#[derive(Clone, Debug)]
pub struct CorrectionSet {
    pub level: u32,
    pub elements: Vec<KPoly>,
}

/// `η_R(v_h) = w_()(R_h)` for all `h ≤ n`, where
/// `N_h = {(−1)^{|I|} t_I (v_i t_j^{q^i})^{q^{‖I‖}} : ‖I‖ + i + j = h}` (with `v_0 = π`,
/// `t_0 = 1`, excluding `I = (), i = j = 0`) and
/// `R_h = N_h ∪ {η_R(v_J) w_J(R_{h−‖J‖}) : 0 < ‖J‖ < h}`.
///
/// Each level uses only the values produced at lower levels by this same recursion.
pub fn right_unit_closed(params: &RingParams, n: u32) -> Result<(Vec<CorrectionSet>, Vec<KPoly>)> {
    let k = KField::new(*params);
    let q = params.q();
    let t = |i: u32| if i == 0 { Poly::one(&k) } else { Poly::var(&k, Var::t(i, 0)) };
    let v = |i: u32| if i == 0 { Poly::constant(&k, k.pi()) } else { Poly::var(&k, Var::v(i)) };
    let mut images = vec![v(0)];
    let mut sets: Vec<CorrectionSet> = vec![CorrectionSet { level: 0, elements: vec![] }];
    let mut evals: Vec<WittEvaluator<KField>> = vec![WittEvaluator::new(&k, vec![])];
    for h in 1..=n {
        let mut elems = Vec::new();
        for m in 0..=h {
            let seqs = if m == 0 { vec![Seq::empty()] } else { Seq::compositions(m) };
            for seq in seqs {
                let sign = if seq.len() % 2 == 0 { 1 } else { -1 };
                let t_seq = crate::sequences::indexed_monomial(&k, &seq, |i| Var::t(i, 0));
                for i in 0..=(h - m) {
                    let j = h - m - i;
                    if m == 0 && i == 0 && j == 0 {
                        continue;
                    }
                    let inner = v(i).try_mul(&t(j).pow(q.pow(i)))?;
                    let elem = t_seq.try_mul(&inner.pow(q.pow(m)))?.scale(&k.from_i64(sign));
                    elems.push(elem);
                }
            }
        }
        for m in 1..h {
            for seq in Seq::compositions(m) {
                let w = evals[(h - m) as usize].w(&seq)?;
                if !w.is_zero() {
                    elems.push(indexed_image(&k, &seq, &images).try_mul(&w)?);
                }
            }
        }
        let value = Poly::sum(&k, elems.iter())?;
        value.assert_integral(&format!("closed-form right unit of v{h}"))?;
        images.push(value);
        evals.push(WittEvaluator::new(&k, elems.clone()));
        sets.push(CorrectionSet { level: h, elements: elems });
    }
    Ok((sets, images))
}

/// `η_R(v_h)` from the closed-form recursion.
pub fn eta_r_closed(params: &RingParams, h: u32) -> Result<KPoly> {
    Ok(right_unit_closed(params, h)?.1.pop().expect("level h computed"))
}

/// Single-slot counit: every `t_i ↦ 0`, identity on the base ring.
pub fn counit(x: &KPoly) -> Result<KPoly> {
    let k = x.ring().clone();
    x.substitute(|v| v.is_t().then(|| Poly::zero(&k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::make_ring;

    #[test]
    fn first_generator() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let k = KField::new(params);
        let got = eta_r_v(&params, 1, Convention::Araki).unwrap();
        let want = &Poly::var(&k, Var::v(1)) + &Poly::var(&k, Var::t(1, 0)).scale(&k.from_i64(-24));
        assert_eq!(got, want);
        assert_eq!(eta_r_closed(&params, 1).unwrap(), want);
        assert_eq!(counit(&got).unwrap(), Poly::var(&k, Var::v(1)));
    }

    #[test]
    fn log_images() {
        let params = make_ring(5, 1, 1, 1).unwrap();
        let k = KField::new(params);
        let l = logs(&params, 2, Convention::Araki);
        let eta = eta_r_logs(&params, 2, Convention::Araki).unwrap();
        let t = |i| Poly::var(&k, Var::t(i, 0));
        assert!(eta[0].is_one());
        assert_eq!(eta[1], l.get(1) + &t(1));
        assert_eq!(eta[2], &(l.get(2) + &(l.get(1) * &t(1).pow(params.q()))) + &t(2));
    }

    #[test]
    fn hazewinkel_first_generator() {
        let params = make_ring(3, 2, 1, 1).unwrap();
        let k = KField::new(params);
        let want = &Poly::var(&k, Var::big_v(1)) + &Poly::var(&k, Var::t(1, 0)).scale(&k.pi());
        assert_eq!(eta_r_v(&params, 1, Convention::Hazewinkel).unwrap(), want);
    }

    #[test]
    fn two_routes_agree() {
        for (p, e) in [(3, 1), (3, 2), (5, 1)] {
            let params = make_ring(p, e, 1, 1).unwrap();
            let ru = RightUnit::compute(&params, Convention::Araki, 2, Specialization::Universal).unwrap();
            let (sets, closed) = right_unit_closed(&params, 2).unwrap();
            assert_eq!(ru.images(), &closed[..]);
            assert!(closed[2].constant_term().is_zero());
            for set in &sets[1..] {
                let want = params.gen_degree(set.level);
                assert!(set.elements.iter().all(|x| x.degree_range() == Some((want, want))));
            }
        }
    }

    #[test]
    fn ring_map() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let k = KField::new(params);
        let ru = RightUnit::compute(&params, Convention::Araki, 1, Specialization::Universal).unwrap();
        let sq = Poly::var(&k, Var::v(1)).pow(2);
        let image = sq.substitute(|v| (v.family == crate::gpoly::Family::Araki).then(|| ru.image(v.index).clone())).unwrap();
        assert_eq!(image, ru.image(1).pow(2));
        assert!(counit(&Poly::var(&k, Var::t(1, 0))).unwrap().is_zero());
        assert_eq!(counit(&Poly::var(&k, Var::v(2))).unwrap(), Poly::var(&k, Var::v(2)));
    }
}
