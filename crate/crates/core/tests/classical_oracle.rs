//! The engine at `(p, e, f) = (3, 1, 1)` against an independent brute-force
//! computation of the classical BP structure formulas.

mod common;

use common::oracle::{self, Pol};
use common::to_oracle;
use fmodule::coeff::make_ring;
use fmodule::hopf::{coproduct_t, eta_r_v, CoproductRoute};
use fmodule::universal::Convention;

#[test]
fn classical_right_unit_and_coproduct() {
    let params = make_ring(3, 1, 1, 1).unwrap();
    let classical = oracle::compute();
    assert_eq!(classical.right_unit[0], Pol::int(3));
    assert_eq!(classical.coproduct[0], Pol::int(1));
    for n in 1..=oracle::LEVELS {
        let eta = eta_r_v(&params, n, Convention::Araki).unwrap();
        assert_eq!(to_oracle(&eta), classical.right_unit[n as usize], "right unit of v{n}");
        let d = params.gen_degree(n);
        for route in [CoproductRoute::Witt, CoproductRoute::Logmatch] {
            let delta = coproduct_t(&params, n, d, route).unwrap();
            assert_eq!(to_oracle(&delta), classical.coproduct[n as usize], "coproduct of t{n} via {route:?}");
        }
    }
}
