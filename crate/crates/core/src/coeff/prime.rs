use super::{CoeffRing, RingParams};
use crate::error::{Error, Result};

/// The prime field `F_p`, elements as canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    params: RingParams,
}

impl PrimeField {
    pub fn new(params: RingParams) -> Self {
        PrimeField { params }
    }
    pub fn p(&self) -> u64 {
        self.params.p()
    }
    /// Symmetric representative in `(−p/2, p/2]`, used for display.
    pub fn signed(&self, a: u64) -> i64 {
        let p = self.p();
        if a > p / 2 {
            a as i64 - p as i64
        } else {
            a as i64
        }
    }
}

impl CoeffRing for PrimeField {
    type Elem = u64;

    fn params(&self) -> RingParams {
        self.params
    }
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p() as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add_assign(&self, a: &mut u64, b: &u64) {
        *a = (*a + *b) % self.p();
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p() - *a) % self.p()
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p() as u128) as u64
    }
    fn pi_pow(&self, n: u64) -> u64 {
        u64::from(n == 0)
    }
    type Wide = u64;
    fn prepare(&self, elems: &[&u64]) -> (u64, Vec<u64>) {
        (1, elems.iter().map(|c| **c).collect())
    }
    fn wide_zero(&self) -> u64 {
        0
    }
    fn wide_mul_add(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = ((*acc as u128 + *a as u128 * *b as u128) % self.p() as u128) as u64;
    }
    fn wide_add_assign(&self, acc: &mut u64, b: &u64) {
        self.add_assign(acc, b);
    }
    fn finish(&self, acc: u64, scale: &u64) -> u64 {
        self.mul(&acc, scale)
    }
    fn render(&self, a: &u64) -> String {
        self.signed(*a).to_string()
    }
    fn to_json(&self, a: &u64) -> serde_json::Value {
        serde_json::Value::from(*a)
    }
    fn from_json(&self, v: &serde_json::Value) -> Result<u64> {
        let n = v.as_i64().ok_or_else(|| Error::Parse("prime-field coefficient must be an integer".into()))?;
        Ok(self.from_i64(n))
    }
}
