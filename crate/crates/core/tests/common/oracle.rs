//! Brute-force classical (p-typical BP) structure formulas at p = 3, computed only from
//! power-series composition and reversion over Q:
//!
//! * the logarithm from `p·log(X) = Σ_i log(v_i X^{p^i})` (`v_0 = p`), coefficient matching;
//! * the right-unit law `G` with `log_G = log_F ∘ f`, `f(X) = exp_F(Σ_i log_F(t_i X^{p^i}))`;
//! * `η_R(v_n)` peeled off `[p]_G(X) = exp_G(p·log_G(X))` by repeated formal subtraction;
//! * `Δ(t_n)` peeled off `Σ^F t_i t'_j^{p^i} X^{p^{i+j}}` the same way.
//!
//! Everything is kept modulo `X^{p^3 + 1}`, i.e. through internal degree `2(p^3 − 1)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const P: u32 = 3;
pub const LEVELS: u32 = 3;
/// Series are truncated modulo `X^ORDER`.
pub const ORDER: usize = 28;
pub const NVARS: usize = 9;

/// Variable slots: `v_1..v_3`, `t_1..t_3`, `t'_1..t'_3`.
pub fn v(i: u32) -> usize {
    (i - 1) as usize
}
pub fn t(i: u32) -> usize {
    (2 + i) as usize
}
pub fn t2(i: u32) -> usize {
    (5 + i) as usize
}

pub type Exps = [u8; NVARS];
pub type Q = BigRational;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Pol(pub HashMap<Exps, Q>);

impl Pol {
    pub fn zero() -> Pol {
        Pol(HashMap::new())
    }
    pub fn constant(c: Q) -> Pol {
        let mut m = HashMap::new();
        if !c.is_zero() {
            m.insert([0; NVARS], c);
        }
        Pol(m)
    }
    pub fn int(n: i64) -> Pol {
        Pol::constant(Q::from_integer(BigInt::from(n)))
    }
    pub fn var(slot: usize) -> Pol {
        let mut e = [0; NVARS];
        e[slot] = 1;
        Pol(HashMap::from([(e, Q::one())]))
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add_term(&mut self, e: Exps, c: Q) {
        let entry = self.0.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }
    pub fn add(&self, o: &Pol) -> Pol {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.add_term(*e, c.clone());
        }
        out
    }
    pub fn sub(&self, o: &Pol) -> Pol {
        self.add(&o.scale(&-Q::one()))
    }
    pub fn scale(&self, c: &Q) -> Pol {
        if c.is_zero() {
            return Pol::zero();
        }
        Pol(self.0.iter().map(|(e, x)| (*e, x * c)).collect())
    }
    pub fn mul(&self, o: &Pol) -> Pol {
        let mut out = Pol::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let mut e = [0; NVARS];
                for k in 0..NVARS {
                    e[k] = e1[k] + e2[k];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
    pub fn pow(&self, mut n: u32) -> Pol {
        let mut acc = Pol::int(1);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A power series in `X` with polynomial coefficients, modulo `X^ORDER`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ser(pub Vec<Pol>);

impl Ser {
    pub fn zero() -> Ser {
        Ser(vec![Pol::zero(); ORDER])
    }
    pub fn x() -> Ser {
        Ser::monomial(Pol::int(1), 1)
    }
    pub fn monomial(c: Pol, n: usize) -> Ser {
        let mut s = Ser::zero();
        if n < ORDER {
            s.0[n] = c;
        }
        s
    }
    pub fn add(&self, o: &Ser) -> Ser {
        Ser(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }
    pub fn sub(&self, o: &Ser) -> Ser {
        Ser(self.0.iter().zip(&o.0).map(|(a, b)| a.sub(b)).collect())
    }
    pub fn scale(&self, c: &Pol) -> Ser {
        Ser(self.0.iter().map(|a| a.mul(c)).collect())
    }
    pub fn mul(&self, o: &Ser) -> Ser {
        let mut out = Ser::zero();
        for (i, a) in self.0.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.0.iter().enumerate().take(ORDER - i).filter(|(_, b)| !b.is_zero()) {
                out.0[i + j] = out.0[i + j].add(&a.mul(b));
            }
        }
        out
    }
    /// `self(inner(X))`; `inner` must have no constant term.
    pub fn compose(&self, inner: &Ser) -> Ser {
        assert!(inner.0[0].is_zero());
        let mut out = Ser::monomial(self.0[0].clone(), 0);
        let mut power = inner.clone();
        for n in 1..ORDER {
            if !self.0[n].is_zero() {
                out = out.add(&power.scale(&self.0[n]));
            }
            if n + 1 < ORDER {
                power = power.mul(inner);
            }
        }
        out
    }
    /// Compositional inverse of `X + …`, by the fixed point `g = X − (self − X)(g)`.
    pub fn reverse(&self) -> Ser {
        assert_eq!(self.0[1], Pol::int(1));
        let tail = self.sub(&Ser::x());
        let mut g = Ser::x();
        loop {
            let next = Ser::x().sub(&tail.compose(&g));
            if next == g {
                return g;
            }
            g = next;
        }
    }
}

/// A formal group law given by its logarithm.
pub struct Law {
    pub log: Ser,
    pub exp: Ser,
}

impl Law {
    pub fn new(log: Ser) -> Law {
        let exp = log.reverse();
        Law { log, exp }
    }
    pub fn sum(&self, parts: &[Ser]) -> Ser {
        let mut total = Ser::zero();
        for s in parts {
            total = total.add(&self.log.compose(s));
        }
        self.exp.compose(&total)
    }
    pub fn difference(&self, a: &Ser, b: &Ser) -> Ser {
        self.exp.compose(&self.log.compose(a).sub(&self.log.compose(b)))
    }
}

fn pn(n: u32) -> usize {
    P.pow(n) as usize
}

fn gen_series(c: Pol, n: u32) -> Ser {
    Ser::monomial(c, pn(n))
}

/// The universal p-typical logarithm in the `v_i`, from `p·log(X) = Σ_i log(v_i X^{p^i})`.
pub fn logarithm() -> Ser {
    let p = Pol::int(P as i64);
    let mut log = Ser::x();
    for n in 1..=LEVELS {
        // With ℓ_n still 0, the X^{p^n} mismatch is −(p − p^{p^n})·ℓ_n.
        let mut rhs = Ser::zero();
        for i in 0..=LEVELS {
            let vi = if i == 0 { p.clone() } else { Pol::var(v(i)) };
            rhs = rhs.add(&log.compose(&gen_series(vi, i)));
        }
        let mismatch = log.scale(&p).sub(&rhs).0[pn(n)].clone();
        let factor = Q::from_integer(BigInt::from(P as i64) - BigInt::from(P as i64).pow(P.pow(n)));
        log.0[pn(n)] = mismatch.scale(&-(Q::one() / factor));
    }
    log
}

/// Peels `a_0, a_1, …` off `s = Σ^F a_n X^{p^n}`.
fn peel(law: &Law, mut s: Ser) -> Vec<Pol> {
    let mut out = Vec::new();
    for n in 0..=LEVELS {
        for k in 1..pn(n) {
            assert!(s.0[k].is_zero(), "unexpected X^{k} term while peeling level {n}");
        }
        let a = s.0[pn(n)].clone();
        s = law.difference(&s, &gen_series(a.clone(), n));
        out.push(a);
    }
    out
}

pub struct Classical {
    /// `η_R(v_0) = p, η_R(v_1), …, η_R(v_3)`.
    pub right_unit: Vec<Pol>,
    /// `Δ(t_0) = 1, Δ(t_1), …, Δ(t_3)`.
    pub coproduct: Vec<Pol>,
}

pub fn compute() -> Classical {
    let left = Law::new(logarithm());
    let tt = |i: u32| if i == 0 { Pol::int(1) } else { Pol::var(t(i)) };
    let tt2 = |i: u32| if i == 0 { Pol::int(1) } else { Pol::var(t2(i)) };

    let parts: Vec<Ser> = (0..=LEVELS).map(|i| gen_series(tt(i), i)).collect();
    let iso = left.sum(&parts);
    let right = Law::new(left.log.compose(&iso));
    let p_series = right.exp.compose(&right.log.scale(&Pol::int(P as i64)));
    let right_unit = peel(&right, p_series);

    let mut parts = Vec::new();
    for i in 0..=LEVELS {
        for j in 0..=(LEVELS - i) {
            parts.push(gen_series(tt(i).mul(&tt2(j).pow(P.pow(i))), i + j));
        }
    }
    let coproduct = peel(&left, left.sum(&parts));
    Classical { right_unit, coproduct }
}
