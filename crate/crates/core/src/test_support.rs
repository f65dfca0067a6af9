use proptest::prelude::*;

use crate::crg::{Crg, EdgeColor, VertexColor};

/// Arbitrary CRG with `1..=max_k` vertices and independent colors.
pub fn arb_crg(max_k: usize) -> impl Strategy<Value = Crg> {
    (1..=max_k).prop_flat_map(|k| {
        (
            proptest::collection::vec(prop_oneof![Just(VertexColor::Black), Just(VertexColor::White)], k),
            proptest::collection::vec(
                prop_oneof![Just(EdgeColor::Black), Just(EdgeColor::White), Just(EdgeColor::Gray)],
                k * (k - 1) / 2,
            ),
        )
            .prop_map(|(vs, es)| {
                let k = vs.len();
                let mut crg = Crg::new(vs).unwrap();
                let mut it = es.into_iter();
                for i in 0..k {
                    for j in i + 1..k {
                        crg.set_edge(i, j, it.next().unwrap());
                    }
                }
                crg
            })
    })
}
