#![allow(dead_code)]

use proptest::prelude::*;
use young::funcrep::{WeightVector, YoungExpr};
use young::lpspace::{DiscreteMeasureSpace, MeasurableFn};

pub type E = YoungExpr<f64>;

pub fn atom() -> impl Strategy<Value = E> {
    prop_oneof![
        Just(E::id()),
        Just(E::log1p()),
        (0.1f64..=1.0).prop_map(|a| E::power(a).unwrap()),
        (0.1f64..10.0).prop_map(|c| E::id_plus_soft(c).unwrap()),
    ]
}

fn weights(k: usize) -> impl Strategy<Value = WeightVector<f64>> {
    prop::collection::vec(0.05f64..1.0, k).prop_map(move |raw| {
        let total: f64 = raw.iter().sum();
        let mut w: Vec<f64> = raw.iter().map(|x| x / total).collect();
        // put the rounding residue on the last entry so the sum is 1 to the ulp
        let head: f64 = w[..k - 1].iter().sum();
        w[k - 1] = 1.0 - head;
        WeightVector::new(w).unwrap()
    })
}

/// Random trees of depth at most three over the four atoms.
pub fn expr() -> impl Strategy<Value = E> {
    atom().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), 0.2f64..5.0).prop_map(|(e, c)| e.scale(c).unwrap()),
            (inner.clone(), 0.2f64..0.95).prop_map(|(e, a)| e.power_of(a).unwrap()),
            (inner.clone(), inner.clone()).prop_map(|(o, i)| E::compose(o, i)),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(|v| E::sum(v).unwrap()),
            (2usize..=3)
                .prop_flat_map(move |k| (weights(k), prop::collection::vec(inner.clone(), k)))
                .prop_map(|(w, v)| E::convex(w, v).unwrap()),
        ]
    })
}

/// Finite spaces with weights in `[0.1, 2]` and `|f|` in `[0, 10]`.
pub fn lp_case() -> impl Strategy<Value = (DiscreteMeasureSpace<f64>, MeasurableFn<f64>)> {
    (1usize..=6)
        .prop_flat_map(|k| {
            (
                prop::collection::vec(0.1f64..=2.0, k),
                prop::collection::vec(-10.0f64..=10.0, k),
            )
        })
        .prop_map(|(w, v)| {
            let s = DiscreteMeasureSpace::from_weights(w).unwrap();
            let f = MeasurableFn::new(&s, v).unwrap();
            (s, f)
        })
}

pub fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
