//! Each example's `run_example` must keep working.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(perft, "perft.rs");
example!(evaluate_position, "evaluate_position.rs");
example!(chromosome_codec, "chromosome_codec.rs");
example!(mentor_scoring, "mentor_scoring.rs");
example!(build_dataset, "build_dataset.rs");
example!(evolve_params, "evolve_params.rs");
example!(engine_match, "engine_match.rs");
example!(tactical_suite, "tactical_suite.rs");
example!(elo_table, "elo_table.rs");
example!(command_line, "command_line.rs");
