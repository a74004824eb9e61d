use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use fmodule::coeff::{make_ring, KField};
use fmodule::gpoly::{KPoly, Poly, Var};
use fmodule::hopf::{coproduct_t, CoproductRoute};
use fmodule::sequences::Seq;
use fmodule::witt::{witt_variables, WittEvaluator};

/// `(Σ v_i + Σ t_i)^n` over `K` at `(3, 2, 1)`: dense, mixed-degree operands.
fn operand(n: u64) -> KPoly {
    let k = KField::new(make_ring(3, 2, 1, 1).unwrap());
    let gens = [Var::v(1), Var::v(2), Var::t(1, 0), Var::t(2, 0), Var::t(1, 1)];
    let base = gens.iter().fold(Poly::from_int(&k, 1), |acc, v| &acc + &Poly::var(&k, *v));
    base.pow(n)
}

fn products(c: &mut Criterion) {
    let mut group = c.benchmark_group("poly_mul");
    for n in [4u64, 6, 8] {
        let (a, b) = (operand(n), operand(n + 1));
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |bench, _| bench.iter(|| black_box(a.mul_seq(&b))));
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |bench, _| bench.iter(|| black_box(a.mul_par(&b))));
    }
    group.finish();
}

fn structure_maps(c: &mut Criterion) {
    let params = make_ring(3, 1, 1, 1).unwrap();
    let mut group = c.benchmark_group("structure_maps");
    group.sample_size(10);
    for route in [CoproductRoute::Witt, CoproductRoute::Logmatch] {
        group.bench_function(format!("coproduct_t3_{route:?}"), |bench| {
            bench.iter(|| coproduct_t(&params, 3, params.gen_degree(3), route).unwrap())
        });
    }
    group.bench_function("witt_(1,1,1)_m3", |bench| {
        let k = KField::new(params);
        bench.iter(|| {
            let vars = witt_variables(3, 0).into_iter().map(|v| Poly::var(&k, v)).collect();
            WittEvaluator::new(&k, vars).w(&"(1,1,1)".parse::<Seq>().unwrap()).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, products, structure_maps);
criterion_main!(benches);
