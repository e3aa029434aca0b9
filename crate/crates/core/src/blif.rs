//! BLIF netlists for registers: one `.latch` per stage with its initial
//! value and one `.names` cover per updating function.
//!
//! Registered outputs are the stage signals `s0 .. s{p-1}` themselves;
//! combinational outputs are `out0 .. out{p-1}`. Functions in algebraic
//! normal form with at most [`ANF_TABULATE_LIMIT`] inputs are written as
//! minimized covers, wider ones as AND terms chained by 2-input XORs.

use std::fmt::Write as _;

use crate::boolfn::{minimize, Cover, MinimizeOptions, TruthTable};
use crate::description::Description;
use crate::register::{Logic, OutputTap, Register, UpdateFn};

pub const ANF_TABULATE_LIMIT: usize = 10;

fn cover_block(out: &mut String, names: &[String], target: &str, cover: &Cover) {
    let signals: Vec<&str> = names.iter().map(String::as_str).chain([target]).collect();
    let _ = writeln!(out, ".names {}", signals.join(" "));
    let n = cover.num_inputs();
    for cube in cover.cubes() {
        if n == 0 {
            out.push_str("1\n");
        } else {
            let _ = writeln!(out, "{} 1", cube.to_pla(n));
        }
    }
}

fn write_function(out: &mut String, f: &UpdateFn, target: &str, fresh: &mut usize) {
    // PLA columns run from the highest local variable down
    let names: Vec<String> = f.inputs().iter().rev().map(|s| format!("s{s}")).collect();
    match f.logic() {
        Logic::Sop(c) => cover_block(out, &names, target, c),
        Logic::Anf(a) if f.inputs().len() <= ANF_TABULATE_LIMIT => {
            let table = TruthTable::from_fn(a.num_inputs(), |x| a.eval_with(|v| x >> v & 1 == 1))
                .expect("small table");
            let cover = minimize(&table.to_incomplete(), &MinimizeOptions::default())
                .expect("complete function");
            cover_block(out, &names, target, &cover);
        }
        Logic::Anf(a) => {
            let mut terms: Vec<String> = Vec::new();
            let mut invert = false;
            for t in a.terms() {
                match t.as_slice() {
                    [] => invert = !invert,
                    [v] => terms.push(format!("s{}", f.inputs()[*v])),
                    vs => {
                        let name = format!("t{}", *fresh);
                        *fresh += 1;
                        let ins: Vec<String> =
                            vs.iter().map(|&v| format!("s{}", f.inputs()[v])).collect();
                        let _ = writeln!(out, ".names {} {name}", ins.join(" "));
                        let _ = writeln!(out, "{} 1", "1".repeat(vs.len()));
                        terms.push(name);
                    }
                }
            }
            let mut acc = match terms.split_first() {
                None => {
                    let _ = writeln!(out, ".names {target}");
                    if invert {
                        out.push_str("1\n");
                    }
                    return;
                }
                Some((first, _)) => first.clone(),
            };
            for (i, t) in terms.iter().enumerate().skip(1) {
                let last = i + 1 == terms.len() && !invert;
                let name = if last {
                    target.to_string()
                } else {
                    let name = format!("t{}", *fresh);
                    *fresh += 1;
                    name
                };
                let _ = writeln!(out, ".names {acc} {t} {name}\n10 1\n01 1");
                acc = name;
            }
            if invert {
                let _ = writeln!(out, ".names {acc} {target}\n0 1");
            } else if terms.len() == 1 {
                let _ = writeln!(out, ".names {acc} {target}\n1 1");
            }
        }
    }
}

/// BLIF netlist for the register in `d`.
pub fn emit_blif(d: &Description, model: &str) -> String {
    let reg = &d.register;
    let mut out = String::new();
    let _ = writeln!(out, ".model {model}");
    let outputs: Vec<String> = match reg.outputs() {
        OutputTap::Stages(p) => (0..*p).map(|j| format!("s{j}")).collect(),
        OutputTap::Functions(fs) => (0..fs.len()).map(|j| format!("out{j}")).collect(),
    };
    let _ = writeln!(out, ".outputs {}", outputs.join(" "));
    for (i, bit) in reg.initial_state().iter().enumerate() {
        let _ = writeln!(out, ".latch n{i} s{i} {}", u8::from(*bit));
    }
    let mut fresh = 0;
    for (i, f) in reg.functions().iter().enumerate() {
        write_function(&mut out, f, &format!("n{i}"), &mut fresh);
    }
    if let OutputTap::Functions(fs) = reg.outputs() {
        for (j, f) in fs.iter().enumerate() {
            write_function(&mut out, f, &format!("out{j}"), &mut fresh);
        }
    }
    out.push_str(".end\n");
    out
}
