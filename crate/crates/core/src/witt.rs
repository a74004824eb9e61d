//! Witt-style symmetric polynomials evaluated on finite families of elements.
//!
//! For a family `s_1, …, s_m` in a π-adic coefficient ring:
//!
//! * the classical `w_k` solve `Σ s_t^{q^k} = Σ_{j≤k} π^j w_j^{q^{k−j}}`;
//! * the generalized `w_K` satisfy
//!   `Σ s_t^{q^{‖K‖}} = Σ_{IJ=K} (Π_A(K)/Π_A(I)) · w_J^{q^{‖I‖}}`, built from
//!   `w_() = Σ s_t`, `w_(k) = (Σ s_t^{q^k} − w_()^{q^k}) / Π_A(k)` and
//!   `w_K = (w_{K''} − w_{K'''}^{q^{k_1}}) / Π_A(k_1)`.
//!
//! Since substitution is a ring map, evaluating on elements directly gives the
//! same result as building the polynomials in `x_t` and substituting.

use std::collections::HashMap;

use crate::coeff::{CoeffRing, KField, PiAdic, RingParams};
use crate::error::Result;
use crate::gpoly::{KPoly, Poly, Var};
use crate::sequences::{pi_a_seq, Seq};

/// Memoizing evaluator of `w_K` and `w_j` on a fixed family.
pub struct WittEvaluator<R: PiAdic> {
    ring: R,
    elems: Vec<Poly<R>>,
    power_sums: HashMap<u32, Poly<R>>,
    memo: HashMap<Seq, Poly<R>>,
    powers: HashMap<(Seq, u32), Poly<R>>,
    classical: Vec<Poly<R>>,
}

impl<R: PiAdic> WittEvaluator<R> {
    /// Zero elements are dropped; they do not affect any `w`.
    pub fn new(ring: &R, elems: Vec<Poly<R>>) -> Self {
        WittEvaluator {
            ring: ring.clone(),
            elems: elems.into_iter().filter(|e| !e.is_zero()).collect(),
            power_sums: HashMap::new(),
            memo: HashMap::new(),
            powers: HashMap::new(),
            classical: Vec::new(),
        }
    }

    pub fn elems(&self) -> &[Poly<R>] {
        &self.elems
    }

    fn q_pow(&self, k: u32) -> u64 {
        self.ring.params().q_pow(k)
    }

    /// `Σ s_t^{q^k}`.
    fn power_sum(&mut self, k: u32) -> Result<Poly<R>> {
        if let Some(p) = self.power_sums.get(&k) {
            return Ok(p.clone());
        }
        let n = self.q_pow(k);
        let parts: Vec<Poly<R>> = crate::par::map(&self.elems, |s| s.pow(n));
        let sum = Poly::sum(&self.ring, parts.iter())?;
        self.power_sums.insert(k, sum.clone());
        Ok(sum)
    }

    /// `(w_J)^{q^k}`.
    pub fn w_pow(&mut self, seq: &Seq, k: u32) -> Result<Poly<R>> {
        if k == 0 {
            return self.w(seq);
        }
        let key = (seq.clone(), k);
        if let Some(p) = self.powers.get(&key) {
            return Ok(p.clone());
        }
        let base = self.w(seq)?;
        let p = base.pow(self.q_pow(k));
        self.powers.insert(key, p.clone());
        Ok(p)
    }

    /// The generalized Witt polynomial `w_K` of the family.
    pub fn w(&mut self, seq: &Seq) -> Result<Poly<R>> {
        if let Some(p) = self.memo.get(seq) {
            return Ok(p.clone());
        }
        let value = if self.elems.len() <= 1 && !seq.is_empty() {
            Poly::zero(&self.ring)
        } else {
            match seq.len() {
                0 => Poly::sum(&self.ring, self.elems.iter())?,
                1 => {
                    let k = seq.entries()[0];
                    let diff = self.power_sum(k)?.try_sub(&self.w_pow(&Seq::empty(), k)?)?;
                    diff.div_pi_a(k)?
                }
                _ => {
                    let k1 = seq.entries()[0];
                    let diff = self.w(&seq.dprime()?)?.try_sub(&self.w_pow(&seq.tprime()?, k1)?)?;
                    diff.div_pi_a(k1)?
                }
            }
        };
        self.memo.insert(seq.clone(), value.clone());
        Ok(value)
    }

    /// The classical `w_j` of the family.
    pub fn classical(&mut self, j: u32) -> Result<Poly<R>> {
        while self.classical.len() <= j as usize {
            let k = self.classical.len() as u32;
            let next = if k == 0 {
                Poly::sum(&self.ring, self.elems.iter())?
            } else {
                let mut acc = self.power_sum(k)?;
                for i in 0..k {
                    let w = self.classical[i as usize].pow(self.q_pow(k - i));
                    acc = acc.try_sub(&w.scale(&w.ring().pi_pow(i as u64)))?;
                }
                acc.div_pi_pow(k)?
            };
            self.classical.push(next);
        }
        Ok(self.classical[j as usize].clone())
    }
}

/// The formal variables `x_1, …, x_m`, all of declared degree `degree`.
pub fn witt_variables(m: u32, degree: u32) -> Vec<Var> {
    (1..=m).map(|t| Var::x(t, degree)).collect()
}

fn symbolic(params: &RingParams, m: u32) -> WittEvaluator<KField> {
    let k = KField::new(*params);
    WittEvaluator::new(&k, witt_variables(m, 0).into_iter().map(|v| Poly::var(&k, v)).collect())
}

/// `w_j(x_1, …, x_m)` over `K`.
pub fn classical_witt(params: &RingParams, j: u32, m: u32) -> Result<KPoly> {
    symbolic(params, m).classical(j)
}

/// `w_K(x_1, …, x_m)` over `K`.
pub fn generalized_witt(params: &RingParams, seq: &Seq, m: u32) -> Result<KPoly> {
    symbolic(params, m).w(seq)
}

/// Both sides of the defining identity for `K`: `(Σ s_t^{q^{‖K‖}}, Σ_{IJ=K} (Π_A(K)/Π_A(I)) w_J^{q^{‖I‖}})`.
pub fn defining_identity_sides(ev: &mut WittEvaluator<KField>, seq: &Seq) -> Result<(KPoly, KPoly)> {
    let k = ev.ring;
    let params = k.params();
    let lhs = ev.power_sum(seq.norm())?;
    let pk = pi_a_seq(&params, seq);
    let mut rhs = Poly::zero(&k);
    for (i, j) in seq.splittings() {
        let factor = k.div(&pk, &pi_a_seq(&params, &i))?;
        rhs = rhs.try_add(&ev.w_pow(&j, i.norm())?.scale(&factor))?;
    }
    Ok((lhs, rhs))
}

/// Both sides of `w_I ≡ (w_{|I|})^{q^{‖I‖−|I|}}` reduced modulo π.
pub fn congruence_sides(
    ev: &mut WittEvaluator<KField>,
    seq: &Seq,
) -> Result<(crate::gpoly::FpPoly, crate::gpoly::FpPoly)> {
    let params = ev.ring.params();
    let lhs = ev.w(seq)?.reduce_mod_pi()?;
    let classical = ev.classical(seq.len() as u32)?;
    let rhs = classical.pow(params.q_pow(seq.norm() - seq.len() as u32)).reduce_mod_pi()?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_ring, Valuation};

    fn x(k: &KField, t: u32) -> KPoly {
        Poly::var(k, Var::x(t, 0))
    }

    #[test]
    fn classical_examples() {
        let params = make_ring(3, 1, 1, 1).unwrap();
        let k = KField::new(params);
        assert_eq!(classical_witt(&params, 0, 3).unwrap(), &(&x(&k, 1) + &x(&k, 2)) + &x(&k, 3));
        assert!(classical_witt(&params, 2, 1).unwrap().is_zero());
        let want = (&(&x(&k, 1).pow(2) * &x(&k, 2)) + &(&x(&k, 1) * &x(&k, 2).pow(2))).neg();
        assert_eq!(classical_witt(&params, 1, 2).unwrap(), want);
    }

    #[test]
    fn generalized_examples() {
        let params = make_ring(3, 2, 1, 1).unwrap();
        let k = KField::new(params);
        let (a, b) = (x(&k, 1), x(&k, 2));
        let n = params.q_pow(2);
        let num = &(&a.pow(n) + &b.pow(n)) - &(&a + &b).pow(n);
        let want = num.scale(&k.inv(&k.pi_a(2)).unwrap());
        assert_eq!(generalized_witt(&params, &Seq::single(2), 2).unwrap(), want);
        assert_eq!(generalized_witt(&params, &Seq::empty(), 2).unwrap(), &a + &b);
        assert!(generalized_witt(&params, &"(1,2)".parse().unwrap(), 1).unwrap().is_zero());
    }

    #[test]
    fn identities_and_symmetry() {
        let params = make_ring(3, 2, 1, 1).unwrap();
        let mut ev = symbolic(&params, 2);
        for seq in Seq::up_to(3) {
            let (lhs, rhs) = defining_identity_sides(&mut ev, &seq).unwrap();
            assert_eq!(lhs, rhs, "identity for {seq}");
            let w = ev.w(&seq).unwrap();
            assert!(w.is_integral(), "{seq}");
            let swapped = w.map_vars(|v| Var::x(3 - v.index, 0));
            assert_eq!(w, swapped);
            let (a, b) = congruence_sides(&mut ev, &seq).unwrap();
            assert_eq!(a, b, "congruence for {seq}");
        }
    }

    #[test]
    fn divisibility_by_pi() {
        for e in [2u32, 3] {
            let params = make_ring(3, e as i64, 1, 1).unwrap();
            let mut ev = symbolic(&params, 2);
            for i in 1..e {
                let v = ev.classical(i).unwrap().min_valuation();
                assert!(matches!(v, Valuation::Finite(n) if n >= 1), "e={e} i={i}: {v:?}");
            }
            assert_eq!(ev.classical(e).unwrap().min_valuation(), Valuation::Finite(0));
        }
    }
}
