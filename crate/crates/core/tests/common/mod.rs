#![allow(dead_code)]

pub mod oracle;

use fmodule::gpoly::{Family, KPoly};
use oracle::{Pol, Q};

/// Re-expresses an engine value over `Q` in the oracle's variables.
pub fn to_oracle(x: &KPoly) -> Pol {
    let mut out = Pol::zero();
    for (m, c) in x.terms() {
        let coords = c.coords();
        assert!(coords.iter().skip(1).all(|r| *r == Q::from_integer(0.into())), "coefficient outside Q");
        let mut term = Pol::constant(coords[0].clone());
        for (var, e) in m.pairs() {
            let slot = match var.family {
                Family::Araki => oracle::v(var.index),
                Family::T0 => oracle::t(var.index),
                Family::T1 => oracle::t2(var.index),
                other => panic!("unexpected variable family {other:?}"),
            };
            term = term.mul(&Pol::var(slot).pow(*e));
        }
        out = out.add(&term);
    }
    out
}
