//! The coproduct `Δ(t_k)` in the two-slot tensor normal form (base-ring
//! generators in slot 0, `t` in slot 0 written `t_i`, slot 1 written `t_i'`).

use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffRing, KField, PiAdic, RingParams};
use crate::error::{Error, Result};
use crate::gpoly::{KPoly, Poly, Var};
use crate::sequences::{indexed_product, Seq};
use crate::universal::{araki_logs, LogSeries};
use crate::witt::WittEvaluator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoproductRoute {
    /// `Δ(t_h) = w_()(Δ_h)` through generalized Witt polynomials.
    Witt,
    /// Solve `Σ^F Δ(t_i) = Σ^F t_i ⊗ t_j^{q^i}` degree by degree through the logarithm.
    Logmatch,
}

impl std::str::FromStr for CoproductRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "witt" => Ok(CoproductRoute::Witt),
            "logmatch" => Ok(CoproductRoute::Logmatch),
            _ => Err(Error::Parse(format!("unknown coproduct route {s:?}"))),
        }
    }
}

/// The sets `Δ_h = M_h ∪ {v_J · w_J(Δ_{h−‖J‖}) : |J| > 0}` with
/// `M_h = {t_i ⊗ t_{h−i}^{q^i}}` and `Δ_0 = {1 ⊗ 1}`, over any π-adic ring and
/// with `v_j` replaced by `v_image(j)`.
pub struct CoproductSets<R: PiAdic> {
    ring: R,
    evals: Vec<WittEvaluator<R>>,
}

impl<R: PiAdic> CoproductSets<R> {
    pub fn build(ring: &R, kmax: u32, v_image: impl Fn(u32) -> Poly<R>) -> Result<Self> {
        let q = ring.params().q();
        let t = |i: u32, slot: u8| if i == 0 { Poly::one(ring) } else { Poly::var(ring, Var::t(i, slot)) };
        let mut evals: Vec<WittEvaluator<R>> = vec![WittEvaluator::new(ring, vec![Poly::one(ring)])];
        for h in 1..=kmax {
            let mut elems: Vec<Poly<R>> = (0..=h).map(|i| t(i, 0).try_mul(&t(h - i, 1).pow(q.pow(i)))).collect::<Result<_>>()?;
            for m in 1..=h {
                for seq in Seq::compositions(m) {
                    let coeff = indexed_product(ring, &seq, &v_image);
                    if coeff.is_zero() {
                        continue;
                    }
                    let w = evals[(h - m) as usize].w(&seq)?;
                    if !w.is_zero() {
                        elems.push(coeff.try_mul(&w)?);
                    }
                }
            }
            evals.push(WittEvaluator::new(ring, elems));
        }
        Ok(CoproductSets { ring: ring.clone(), evals })
    }

    pub fn set(&self, h: u32) -> &[Poly<R>] {
        self.evals[h as usize].elems()
    }

    /// `w_K(Δ_h)`.
    pub fn witt(&mut self, h: u32, seq: &Seq) -> Result<Poly<R>> {
        self.evals[h as usize].w(seq)
    }

    /// `Δ(t_h) = w_()(Δ_h)`.
    pub fn delta(&self, h: u32) -> Result<Poly<R>> {
        Poly::sum(&self.ring, self.set(h).iter())
    }
}

fn require_bound(params: &RingParams, k: u32, d: u64) -> Result<()> {
    if d < params.gen_degree(k) {
        return Err(Error::OutOfRange(format!(
            "degree bound {d} is below deg t{k} = {}; the coproduct would be truncated",
            params.gen_degree(k)
        )));
    }
    Ok(())
}

/// Logmatch route for an arbitrary left logarithm:
/// `Σ_{m} ℓ_m Δ(t_{k−m})^{q^m} = Σ_{i+j+m=k} ℓ_m t_i^{q^m} ⊗ t_j^{q^{i+m}}`, solved for `Δ(t_k)`.
pub fn coproduct_logmatch(logs: &LogSeries, kmax: u32) -> Result<Vec<KPoly>> {
    let params = logs.params();
    let k = logs.field();
    let q = params.q();
    let t = |i: u32, slot: u8| if i == 0 { Poly::one(&k) } else { Poly::var(&k, Var::t(i, slot)) };
    let mut deltas = vec![Poly::one(&k)];
    for n in 1..=kmax {
        let mut acc = Poly::zero(&k);
        for m in 0..=n {
            for i in 0..=(n - m) {
                let j = n - m - i;
                let term = t(i, 0).pow(q.pow(m)).try_mul(&t(j, 1).pow(q.pow(i + m)))?;
                acc = acc.try_add(&logs.get(m as usize).try_mul(&term)?)?;
            }
        }
        for m in 1..=n {
            let lower = deltas[(n - m) as usize].pow(q.pow(m));
            acc = acc.try_sub(&logs.get(m as usize).try_mul(&lower)?)?;
        }
        acc.assert_integral(&format!("coproduct of t{n}"))?;
        deltas.push(acc);
    }
    Ok(deltas)
}

/// `Δ(t_1), …, Δ(t_kmax)` in Araki generators via the Witt route (index 0 is `1 ⊗ 1`).
pub fn coproducts_witt(params: &RingParams, kmax: u32) -> Result<Vec<KPoly>> {
    let k = KField::new(*params);
    let sets = CoproductSets::build(&k, kmax, |j| Poly::var(&k, Var::v(j)))?;
    (0..=kmax)
        .map(|h| {
            let d = sets.delta(h)?;
            d.assert_integral(&format!("coproduct of t{h}"))?;
            Ok(d)
        })
        .collect()
}

/// `Δ(t_k)` in Araki generators, truncated at `d ≥ deg t_k`.
pub fn coproduct_t(params: &RingParams, k: u32, d: u64, route: CoproductRoute) -> Result<KPoly> {
    require_bound(params, k, d)?;
    let value = match route {
        CoproductRoute::Witt => coproducts_witt(params, k)?.pop().expect("level k"),
        CoproductRoute::Logmatch => coproduct_logmatch(&araki_logs(params, k), k)?.pop().expect("level k"),
    };
    Ok(value.truncate(d))
}

/// `(ε ⊗ 1)`: slot-0 `t`'s map to 0, slot 1 becomes slot 0.
pub fn counit_left<R: CoeffRing>(x: &Poly<R>) -> Result<Poly<R>> {
    let ring = x.ring().clone();
    let killed = x.substitute(|v| (v.slot() == Some(0)).then(|| Poly::zero(&ring)))?;
    Ok(killed.map_vars(|v| if v.slot() == Some(1) { v.in_slot(0) } else { *v }))
}

/// `(1 ⊗ ε)`: slot-1 `t`'s map to 0.
pub fn counit_right<R: CoeffRing>(x: &Poly<R>) -> Result<Poly<R>> {
    let ring = x.ring().clone();
    x.substitute(|v| (v.slot() == Some(1)).then(|| Poly::zero(&ring)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::make_ring;

    #[test]
    fn second_coproduct_classical() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let k = KField::new(params);
        let t = |i, s| Poly::var(&k, Var::t(i, s));
        let v1 = Poly::var(&k, Var::v(1));
        let cross = &(&t(1, 0).pow(2) * &t(1, 1)) + &(&t(1, 0) * &t(1, 1).pow(2));
        let want = &(&(&t(2, 0) + &(&t(1, 0) * &t(1, 1).pow(3))) + &t(2, 1)) + &(&v1 * &cross).scale(&k.from_ratio(1, 8));
        for route in [CoproductRoute::Witt, CoproductRoute::Logmatch] {
            assert_eq!(coproduct_t(&params, 2, 16, route).unwrap(), want);
        }
        assert!(coproduct_t(&params, 2, 15, CoproductRoute::Witt).is_err());
    }

    #[test]
    fn low_levels_and_counits() {
        let params = make_ring(3, 2, 1, 1).unwrap();
        let k = KField::new(params);
        let all = coproducts_witt(&params, 2).unwrap();
        assert!(all[0].is_one());
        assert_eq!(all[1], &Poly::var(&k, Var::t(1, 0)) + &Poly::var(&k, Var::t(1, 1)));
        let t2 = Poly::var(&k, Var::t(2, 0));
        assert_eq!(counit_left(&all[2]).unwrap(), t2);
        assert_eq!(counit_right(&all[2]).unwrap(), t2);
        assert_eq!("logmatch".parse::<CoproductRoute>().unwrap(), CoproductRoute::Logmatch);
    }
}
