mod common;

use common::*;
use proptest::prelude::*;
use rnlu_core::bitseq::{ceil_log2, random_sequence};
use rnlu_core::boolfn::FactorOptions;
use rnlu_core::{construct_rnlu, BitSequence, ConstructOptions, CostModel, Error, Register};

fn forty_bit_options() -> ConstructOptions {
    ConstructOptions {
        generator: Some("lfsr:1+x+x^4".parse().unwrap()),
        g0: Some(1),
        ..Default::default()
    }
}

#[test]
fn forty_bit_states_and_table() {
    let r = construct_rnlu(&seq(FORTY_BITS), 4, &forty_bit_options()).unwrap();
    assert_eq!(r.states(), &[1, 8, 4, 2, 9, 12, 6, 11, 5, 10]);
    assert_eq!((r.p(), r.r(), r.m(), r.stage_count()), (4, 4, 10, 8));
    assert_eq!(r.dont_care_count(), 6);
    let mut expected = String::from("x7 x6 x5 x4 | f3 f2 f1 f0\n");
    for (x, f) in FORTY_BIT_TABLE {
        let cells = |s: &str| {
            s.chars()
                .map(|c| format!(" {c}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        expected.push_str(&format!("{} | {}\n", cells(x), cells(f)));
    }
    assert_eq!(r.defining_table_text(), expected);
}

#[test]
fn default_generator_choice_matches_the_forty_bit_example() {
    let r = construct_rnlu(&seq(FORTY_BITS), 4, &ConstructOptions::default()).unwrap();
    assert_eq!(r.generator().spec_string(), "lfsr:1+x+x^4");
    assert_eq!(r.g0(), 1);
}

#[test]
fn forty_bit_round_trip_in_both_modes() {
    let s = seq(FORTY_BITS);
    let r = construct_rnlu(&s, 4, &forty_bit_options()).unwrap();
    assert_eq!(r.simulate(10).unwrap(), s);
    let stripped = r.strip_output_stages();
    assert_eq!(stripped.stage_count(), 4);
    assert_eq!(stripped.simulate(10).unwrap(), s);
}

#[test]
fn output_functions_read_extra_bits_only() {
    let s = random_sequence(300, 4).unwrap();
    let r = construct_rnlu(&s, 3, &ConstructOptions::default()).unwrap();
    let reg = r.to_register();
    for f in &reg.functions()[..3] {
        assert!(f.inputs().iter().all(|&i| i >= 3));
    }
    // trinomial feedback reads two stages, every other extra stage one
    for f in &reg.functions()[3..] {
        assert!(f.inputs().len() <= 2);
    }
}

#[test]
fn single_vector_sequence() {
    let s = BitSequence::from_bits(&[1, 0]);
    let r = construct_rnlu(&s, 2, &ConstructOptions::default()).unwrap();
    assert_eq!((r.m(), r.r()), (1, 0));
    let reg = r.to_register();
    assert!(reg.functions()[0].eval(&[false, false]));
    assert!(!reg.functions()[1].eval(&[false, false]));
    assert_eq!(r.reproduce().unwrap(), s);
}

#[test]
fn constant_one_bit_device_strips_to_a_wire() {
    let s = BitSequence::from_bits(&[1]);
    let r = construct_rnlu(&s, 1, &ConstructOptions::default()).unwrap();
    let stripped = r.strip_output_stages();
    assert_eq!(stripped.stage_count(), 0);
    assert_eq!(stripped.reproduce().unwrap(), s);
}

#[test]
fn stripping_saves_p_storage_elements() {
    let cm = CostModel::new(1.5, 4.0).unwrap();
    let f = FactorOptions::default();
    for seed in 0..5 {
        let s = random_sequence(512, seed).unwrap();
        let r = construct_rnlu(&s, 8, &ConstructOptions::default()).unwrap();
        let full = r.size(&cm, &f);
        let stripped = r.strip_output_stages().size(&cm, &f);
        assert_eq!(full.storage_elements, stripped.storage_elements + 8);
        assert_eq!(stripped.total, full.total - 8.0 * cm.beta);
    }
}

#[test]
fn zero_generator_state_is_rejected() {
    let s = seq(FORTY_BITS);
    let opts = ConstructOptions {
        g0: Some(0),
        ..forty_bit_options()
    };
    assert_eq!(
        construct_rnlu(&s, 4, &opts).unwrap_err(),
        Error::DegenerateState
    );
    let r = construct_rnlu(&s, 4, &forty_bit_options()).unwrap();
    let reg = r.to_register();
    let mut init = reg.initial_state();
    init[4..].fill(false);
    assert_eq!(reg.simulate(&init, 3), Err(Error::DegenerateState));
    assert!(matches!(
        reg.simulate(&init[..5], 3),
        Err(Error::WidthMismatch { .. })
    ));
}

#[test]
fn counter_generator_override() {
    let s = seq(FORTY_BITS);
    let opts = ConstructOptions {
        generator: Some("counter".parse().unwrap()),
        ..Default::default()
    };
    let r = construct_rnlu(&s, 4, &opts).unwrap();
    assert_eq!(r.states(), &(0..10).collect::<Vec<u64>>()[..]);
    assert_eq!(r.reproduce().unwrap(), s);
}

#[test]
fn p_zero_is_an_argument_error() {
    let s = seq(FORTY_BITS);
    assert!(matches!(
        construct_rnlu(&s, 0, &ConstructOptions::default()),
        Err(Error::InvalidArgument(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn round_trip_and_stage_count(n in 1usize..600, p in 1usize..12, seed in any::<u64>()) {
        let s = random_sequence(n, seed).unwrap();
        let r = construct_rnlu(&s, p, &ConstructOptions::default()).unwrap();
        let m = n.div_ceil(p);
        prop_assert_eq!(r.m(), m);
        prop_assert_eq!(r.stage_count(), ceil_log2(m as u128) + p);
        prop_assert_eq!(r.dont_care_count(), (1u128 << r.r()) - m as u128);
        for t in r.defining_tables() {
            prop_assert_eq!(t.dont_care_count(), (1u128 << r.r()) - m as u128);
        }
        prop_assert_eq!(r.reproduce().unwrap(), s.clone());
        prop_assert_eq!(r.strip_output_stages().reproduce().unwrap(), s);
    }
}
