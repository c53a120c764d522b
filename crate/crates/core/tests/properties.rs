mod common;

use common::props::{self, runner};

const CASES: u32 = 256;

macro_rules! suite {
    ($name:ident) => {
        #[test]
        fn $name() {
            if let Err(e) = props::$name(&mut runner(CASES, false)) {
                panic!("{e}");
            }
        }
    };
}

suite!(gauge_invariance);
suite!(kernel_iff_trivial);
suite!(trace_identity);
suite!(standard_below_combinatorial);
suite!(homomorphism_implication);
suite!(shift_algebra);
suite!(spanning_subgraph);
suite!(cheeger_monotone);
suite!(cheeger_inequality_k1);
suite!(cheeger_inequality_k2);
suite!(frustration_zero_iff_trivial);
suite!(classical_h2);
suite!(min_max);
