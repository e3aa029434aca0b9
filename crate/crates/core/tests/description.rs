mod common;

use common::*;
use rnlu_core::baselines::{du11_rnlu, lfsr_register};
use rnlu_core::bitseq::random_sequence;
use rnlu_core::blif::emit_blif;
use rnlu_core::boolfn::MinimizeOptions;
use rnlu_core::{construct_rnlu, BitSequence, ConstructOptions, Description, Error};

fn forty_bit() -> rnlu_core::Rnlu {
    let opts = ConstructOptions {
        generator: Some("lfsr:1+x+x^4".parse().unwrap()),
        g0: Some(1),
        ..Default::default()
    };
    construct_rnlu(&seq(FORTY_BITS), 4, &opts).unwrap()
}

fn count(text: &str, prefix: &str) -> usize {
    text.lines().filter(|l| l.starts_with(prefix)).count()
}

#[test]
fn header_fields() {
    let text = Description::from_rnlu(&forty_bit()).to_string();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], ".rnlu 1");
    assert!(lines.contains(&".stages 8"));
    assert!(lines.contains(&".generator lfsr:1+x+x^4"));
    assert!(lines.contains(&".g0 0001"));
    // output stages hold vector 0, extra bits hold the second state 1000
    assert!(lines.contains(&".init 10010001"));
    assert!(lines.contains(&".nonzero 4 8"));
    assert_eq!(*lines.last().unwrap(), ".end");
}

#[test]
fn descriptions_round_trip_and_simulate() {
    let s = seq(FORTY_BITS);
    for r in [forty_bit(), forty_bit().strip_output_stages()] {
        let d = Description::from_rnlu(&r);
        let back = Description::parse(&d.to_string()).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.simulate(None, back.cycles()).unwrap(), s);
    }
}

#[test]
fn baseline_descriptions_round_trip() {
    let s = random_sequence(200, 3).unwrap();
    let regs = [
        ("lfsr_bm", lfsr_register(&s).unwrap()),
        (
            "du11",
            du11_rnlu(&s, 4, &MinimizeOptions::default()).unwrap(),
        ),
        ("nlfsr", nlfsr4()),
    ];
    for (name, reg) in regs {
        let d = Description::from_register(name, reg, s.len());
        let back = Description::parse(&d.to_string()).unwrap();
        assert_eq!(back, d);
    }
    let d = Description::from_register("nlfsr", nlfsr4(), 15);
    let back = Description::parse(&d.to_string()).unwrap();
    assert_eq!(
        back.simulate(None, 15).unwrap(),
        BitSequence::from_bits(&FIFTEEN_BITS)
    );
}

#[test]
fn simulation_checks_the_initial_state() {
    let d = Description::from_rnlu(&forty_bit());
    let zero_extra = [true, false, false, true, false, false, false, false];
    assert_eq!(
        d.simulate(Some(&zero_extra), 2),
        Err(Error::DegenerateState)
    );
    assert!(matches!(
        d.simulate(Some(&[true; 3]), 2),
        Err(Error::WidthMismatch { .. })
    ));
}

#[test]
fn malformed_descriptions_report_a_line() {
    let good = Description::from_rnlu(&forty_bit()).to_string();
    let cases = [
        String::new(),
        good.replace(".rnlu 1", ".rnlu 9"),
        good.replace(".end\n", ""),
        good.replace(".fn 3 ", ".fn 30 "),
        good.replacen(" 1\n", " 2\n", 1),
        good.replace(".outputs stages 4", ".outputs wires 4"),
    ];
    for text in cases {
        let e = Description::parse(&text).unwrap_err();
        assert!(matches!(e, Error::Description { .. }), "{e:?}");
        assert!(e.is_parse_error());
    }
}

#[test]
fn blif_structure() {
    let r = forty_bit();
    let full = emit_blif(&Description::from_rnlu(&r), "forty");
    assert_eq!(count(&full, ".latch"), 8);
    assert_eq!(count(&full, ".names"), 8);
    assert!(full.starts_with(".model forty\n"));
    assert!(full.contains(".outputs s0 s1 s2 s3\n"));
    assert!(full.trim_end().ends_with(".end"));

    let stripped = emit_blif(&Description::from_rnlu(&r.strip_output_stages()), "forty");
    assert_eq!(count(&stripped, ".latch"), 4);
    assert!(stripped.contains(".outputs out0 out1 out2 out3\n"));
}

#[test]
fn constant_device_blif() {
    let r = construct_rnlu(
        &BitSequence::from_bits(&[1]),
        1,
        &ConstructOptions::default(),
    )
    .unwrap()
    .strip_output_stages();
    let text = emit_blif(&Description::from_rnlu(&r), "one");
    assert_eq!(count(&text, ".latch"), 0);
    assert!(text.contains(".names out0\n1\n"));
}

/// Evaluates a BLIF netlist with a tiny reader: latches, `.names` covers.
fn simulate_blif(text: &str, cycles: usize) -> Vec<bool> {
    use std::collections::HashMap;
    let mut outputs = Vec::new();
    let mut latches: Vec<(String, String, bool)> = Vec::new();
    let mut names: Vec<(Vec<String>, String, Vec<String>)> = Vec::new();
    for line in text.lines() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first().copied() {
            Some(".outputs") => outputs = toks[1..].iter().map(|s| s.to_string()).collect(),
            Some(".latch") => latches.push((toks[1].into(), toks[2].into(), toks[3] == "1")),
            Some(".names") => {
                let sigs: Vec<String> = toks[1..].iter().map(|s| s.to_string()).collect();
                let (out, ins) = sigs.split_last().unwrap();
                names.push((ins.to_vec(), out.clone(), Vec::new()));
            }
            Some(".model") | Some(".end") | None => {}
            Some(_) => names.last_mut().unwrap().2.push(line.to_string()),
        }
    }
    let mut state: HashMap<String, bool> =
        latches.iter().map(|(_, q, v)| (q.clone(), *v)).collect();
    let mut out = Vec::new();
    for _ in 0..cycles {
        let mut val = state.clone();
        // covers are emitted in dependency order for combinational nodes
        let mut pending: Vec<&(Vec<String>, String, Vec<String>)> = names.iter().collect();
        while !pending.is_empty() {
            pending.retain(|(ins, o, rows)| {
                if !ins.iter().all(|i| val.contains_key(i)) {
                    return true;
                }
                let on = rows.iter().any(|row| {
                    let mut parts = row.split_whitespace();
                    if ins.is_empty() {
                        return parts.next() == Some("1");
                    }
                    let cube = parts.next().unwrap();
                    cube.chars().zip(ins).all(|(c, i)| match c {
                        '1' => val[i],
                        '0' => !val[i],
                        _ => true,
                    })
                });
                val.insert(o.clone(), on);
                false
            });
        }
        out.extend(outputs.iter().map(|o| val[o]));
        for (d, q, _) in &latches {
            state.insert(q.clone(), val[d]);
        }
    }
    out
}

#[test]
fn blif_netlists_generate_the_sequence() {
    let s = seq(FORTY_BITS);
    for r in [forty_bit(), forty_bit().strip_output_stages()] {
        let text = emit_blif(&Description::from_rnlu(&r), "forty");
        assert_eq!(simulate_blif(&text, 10), s.bits());
    }
    let d = Description::from_register("nlfsr", nlfsr4(), 15);
    let got = simulate_blif(&emit_blif(&d, "nlfsr"), 15);
    assert_eq!(
        BitSequence::new(got).unwrap(),
        BitSequence::from_bits(&FIFTEEN_BITS)
    );
}

#[test]
fn wide_generator_logic_is_chained() {
    // 2^12 vectors fill a 12-stage counter whose top stage reads 12 inputs
    let s = random_sequence(4096, 5).unwrap();
    let r = construct_rnlu(&s, 1, &ConstructOptions::default()).unwrap();
    assert_eq!(r.generator().spec_string(), "counter");
    let text = emit_blif(&Description::from_rnlu(&r), "wide");
    assert_eq!(simulate_blif(&text, 64), &s.bits()[..64]);
}
