//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().unwrap();
        }
    };
}

example!(concept_hierarchy);
example!(basic_mining);
example!(test_and_generate_gap);
example!(mlc_prune);
example!(constraint_language);
example!(synthetic_benchmark);
example!(reports);
example!(oracle_check);
