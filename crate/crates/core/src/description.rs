//! Plain-text register descriptions shared by every construction.
//!
//! ```text
//! .rnlu 1
//! .method presented
//! .stages 8
//! .p 4
//! .r 4
//! .generator lfsr:1+x+x^4
//! .g0 0001
//! .length 40
//! .pad 0
//! .init 10011000
//! .nonzero 4 8
//! .outputs stages 4
//! .fn 0 sop s7 s6 s5 s4
//! 1-0- 1
//! .fn 4 anf s5
//! s5
//! .end
//! ```
//!
//! `.init` lists stage 0 first. A `sop` block lists its inputs in PLA column
//! order and holds one cube per line; an `anf` block holds one product term
//! per line (`1` for the constant term). Registers with combinational
//! outputs declare `.outputs functions p` and add one `.out j` block per
//! output. `.r`, `.generator` and `.g0` are informational.

use std::fmt;

use crate::bitseq::BitSequence;
use crate::boolfn::{Anf, Cover, Cube};
use crate::error::{Error, Result};
use crate::extragen::state_bits;
use crate::register::{GenericRegister, Logic, OutputTap, Register, UpdateFn};
use crate::rnlu::Rnlu;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Description {
    pub method: String,
    /// Length of the target sequence.
    pub length: usize,
    pub pad_count: usize,
    pub r: Option<usize>,
    pub generator: Option<String>,
    pub g0: Option<String>,
    pub register: GenericRegister,
}

impl Description {
    pub fn from_register(method: &str, register: GenericRegister, length: usize) -> Self {
        Self {
            method: method.to_string(),
            length,
            pad_count: 0,
            r: None,
            generator: None,
            g0: None,
            register,
        }
    }

    pub fn from_rnlu(rnlu: &Rnlu) -> Self {
        Self {
            method: "presented".into(),
            length: rnlu.n(),
            pad_count: rnlu.pad_count(),
            r: Some(rnlu.r()),
            generator: Some(rnlu.generator().spec_string()),
            g0: Some(state_bits(rnlu.g0(), rnlu.r())),
            register: rnlu.to_register(),
        }
    }

    /// Cycles needed to emit `length` bits.
    pub fn cycles(&self) -> usize {
        self.length.div_ceil(self.register.parallelism())
    }

    /// Runs `cycles` cycles from `init`, or from the stored initial state.
    pub fn simulate(&self, init: Option<&[bool]>, cycles: usize) -> Result<BitSequence> {
        let stored = self.register.initial_state();
        self.register.simulate(init.unwrap_or(&stored), cycles)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::default().run(text)
    }
}

fn stage(i: usize) -> String {
    format!("s{i}")
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn write_function(f: &mut fmt::Formatter<'_>, head: &str, func: &UpdateFn) -> fmt::Result {
    let inputs = func.inputs();
    let names: Vec<String> = inputs.iter().rev().map(|&s| stage(s)).collect();
    let (kind, body) = match func.logic() {
        Logic::Sop(c) => {
            let n = c.num_inputs();
            let lines: Vec<String> = c
                .cubes()
                .iter()
                .map(|q| {
                    if n == 0 {
                        "1".to_string()
                    } else {
                        format!("{} 1", q.to_pla(n))
                    }
                })
                .collect();
            ("sop", lines)
        }
        Logic::Anf(a) => {
            let lines = a
                .terms()
                .iter()
                .map(|t| {
                    if t.is_empty() {
                        "1".to_string()
                    } else {
                        t.iter()
                            .map(|&v| stage(inputs[v]))
                            .collect::<Vec<_>>()
                            .join(" ")
                    }
                })
                .collect();
            ("anf", lines)
        }
    };
    write!(f, "{head} {kind}")?;
    for n in &names {
        write!(f, " {n}")?;
    }
    writeln!(f)?;
    for line in body {
        writeln!(f, "{line}")?;
    }
    Ok(())
}

impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reg = &self.register;
        writeln!(f, ".rnlu {FORMAT_VERSION}")?;
        writeln!(f, ".method {}", self.method)?;
        writeln!(f, ".stages {}", reg.stage_count())?;
        writeln!(f, ".p {}", reg.parallelism())?;
        if let Some(r) = self.r {
            writeln!(f, ".r {r}")?;
        }
        if let Some(g) = &self.generator {
            writeln!(f, ".generator {g}")?;
        }
        if let Some(g0) = &self.g0 {
            writeln!(f, ".g0 {g0}")?;
        }
        writeln!(f, ".length {}", self.length)?;
        writeln!(f, ".pad {}", self.pad_count)?;
        writeln!(f, ".init {}", bits(&reg.initial_state()))?;
        if let Some((a, b)) = reg.nonzero_stages() {
            writeln!(f, ".nonzero {a} {b}")?;
        }
        match reg.outputs() {
            OutputTap::Stages(p) => writeln!(f, ".outputs stages {p}")?,
            OutputTap::Functions(fs) => writeln!(f, ".outputs functions {}", fs.len())?,
        }
        for (i, func) in reg.functions().iter().enumerate() {
            write_function(f, &format!(".fn {i}"), func)?;
        }
        if let OutputTap::Functions(fs) = reg.outputs() {
            for (j, func) in fs.iter().enumerate() {
                write_function(f, &format!(".out {j}"), func)?;
            }
        }
        writeln!(f, ".end")
    }
}

enum BlockKind {
    Sop,
    Anf,
}

struct Block {
    line: usize,
    target: (bool, usize),
    kind: BlockKind,
    /// Stage of each local variable.
    inputs: Vec<usize>,
    lines: Vec<(usize, String)>,
}

#[derive(Default)]
struct Parser {
    method: Option<String>,
    stages: Option<usize>,
    p: Option<usize>,
    r: Option<usize>,
    generator: Option<String>,
    g0: Option<String>,
    length: Option<usize>,
    pad: usize,
    init: Option<Vec<bool>>,
    nonzero: Option<(usize, usize)>,
    outputs: Option<(bool, usize)>,
    blocks: Vec<Block>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Description {
        line,
        message: message.into(),
    }
}

fn number(line: usize, s: Option<&str>) -> Result<usize> {
    s.and_then(|t| t.parse().ok())
        .ok_or_else(|| err(line, "expected a non-negative integer"))
}

fn stage_index(line: usize, name: &str) -> Result<usize> {
    name.strip_prefix('s')
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(line, format!("bad stage name {name:?}")))
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Description> {
        let mut ended = false;
        let mut saw_magic = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if ended {
                return Err(err(line, "content after .end"));
            }
            if !saw_magic {
                let mut t = content.split_whitespace();
                if t.next() != Some(".rnlu") {
                    return Err(err(line, "expected .rnlu header"));
                }
                let v = number(line, t.next())?;
                if v as u32 != FORMAT_VERSION {
                    return Err(err(line, format!("unsupported format version {v}")));
                }
                saw_magic = true;
                continue;
            }
            if content.starts_with('.') {
                ended = self.directive(line, content)?;
            } else {
                match self.blocks.last_mut() {
                    Some(b) => b.lines.push((line, content.to_string())),
                    None => return Err(err(line, "body line outside a function block")),
                }
            }
        }
        if !saw_magic {
            return Err(err(1, "empty description"));
        }
        if !ended {
            return Err(err(text.lines().count().max(1), "missing .end"));
        }
        self.finish()
    }

    fn directive(&mut self, line: usize, content: &str) -> Result<bool> {
        let mut t = content.split_whitespace();
        let key = t.next().unwrap_or_default();
        match key {
            ".method" => self.method = t.next().map(str::to_string),
            ".stages" => self.stages = Some(number(line, t.next())?),
            ".p" => self.p = Some(number(line, t.next())?),
            ".r" => self.r = Some(number(line, t.next())?),
            ".generator" => self.generator = t.next().map(str::to_string),
            ".g0" => self.g0 = Some(t.next().unwrap_or("").to_string()),
            ".length" => self.length = Some(number(line, t.next())?),
            ".pad" => self.pad = number(line, t.next())?,
            ".init" => {
                let s = t.next().unwrap_or("");
                let v = s
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(err(line, format!("bad init bit {c:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.init = Some(v);
            }
            ".nonzero" => {
                let a = number(line, t.next())?;
                let b = number(line, t.next())?;
                self.nonzero = Some((a, b));
            }
            ".outputs" => {
                let comb = match t.next() {
                    Some("stages") => false,
                    Some("functions") => true,
                    _ => return Err(err(line, "expected `stages` or `functions`")),
                };
                self.outputs = Some((comb, number(line, t.next())?));
            }
            ".fn" | ".out" => {
                let index = number(line, t.next())?;
                let kind = match t.next() {
                    Some("sop") => BlockKind::Sop,
                    Some("anf") => BlockKind::Anf,
                    _ => return Err(err(line, "expected `sop` or `anf`")),
                };
                let mut inputs = t
                    .map(|n| stage_index(line, n))
                    .collect::<Result<Vec<_>>>()?;
                inputs.reverse();
                self.blocks.push(Block {
                    line,
                    target: (key == ".out", index),
                    kind,
                    inputs,
                    lines: Vec::new(),
                });
            }
            ".end" => return Ok(true),
            _ => return Err(err(line, format!("unknown directive {key}"))),
        }
        Ok(false)
    }

    fn finish(self) -> Result<Description> {
        let k = self.stages.ok_or_else(|| err(1, "missing .stages"))?;
        let init = self.init.ok_or_else(|| err(1, "missing .init"))?;
        let (comb, p) = self.outputs.ok_or_else(|| err(1, "missing .outputs"))?;
        if let Some(q) = self.p {
            if q != p {
                return Err(err(1, ".p disagrees with .outputs"));
            }
        }
        let mut functions: Vec<Option<UpdateFn>> = vec![None; k];
        let mut outs: Vec<Option<UpdateFn>> = vec![None; if comb { p } else { 0 }];
        for b in self.blocks {
            let line = b.line;
            let f = block_function(line, b.kind, b.inputs, &b.lines)?;
            let (is_out, i) = b.target;
            let slot = if is_out {
                outs.get_mut(i)
            } else {
                functions.get_mut(i)
            }
            .ok_or_else(|| err(line, format!("function index {i} out of range")))?;
            if slot.replace(f).is_some() {
                return Err(err(line, format!("function {i} defined twice")));
            }
        }
        let functions = functions
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| err(1, format!("missing .fn {i}"))))
            .collect::<Result<Vec<_>>>()?;
        let outputs = if comb {
            OutputTap::Functions(
                outs.into_iter()
                    .enumerate()
                    .map(|(j, f)| f.ok_or_else(|| err(1, format!("missing .out {j}"))))
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            OutputTap::Stages(p)
        };
        let mut register =
            GenericRegister::new(functions, outputs, init).map_err(|e| err(1, e.to_string()))?;
        if let Some((a, b)) = self.nonzero {
            register = register
                .with_nonzero_stages(a, b)
                .map_err(|e| err(1, e.to_string()))?;
        }
        Ok(Description {
            method: self.method.unwrap_or_else(|| "unknown".into()),
            length: self.length.unwrap_or(0),
            pad_count: self.pad,
            r: self.r,
            generator: self.generator,
            g0: self.g0,
            register,
        })
    }
}

fn block_function(
    block_line: usize,
    kind: BlockKind,
    inputs: Vec<usize>,
    lines: &[(usize, String)],
) -> Result<UpdateFn> {
    let n = inputs.len();
    let logic = match kind {
        BlockKind::Sop => {
            let mut cubes = Vec::with_capacity(lines.len());
            for (line, text) in lines {
                let toks: Vec<&str> = text.split_whitespace().collect();
                let (cube, out) = match toks.as_slice() {
                    [out] if n == 0 => (Cube::UNIVERSE, *out),
                    [c, out] if c.len() == n => (
                        Cube::from_pla(c).map_err(|e| err(*line, e.to_string()))?,
                        *out,
                    ),
                    _ => {
                        return Err(err(
                            *line,
                            format!("expected a {n}-column cube and an output"),
                        ))
                    }
                };
                if out != "1" {
                    return Err(err(*line, "only ON-set cubes are supported"));
                }
                cubes.push(cube);
            }
            Logic::Sop(Cover::new(n, cubes).map_err(|e| err(block_line, e.to_string()))?)
        }
        BlockKind::Anf => {
            let mut terms = Vec::with_capacity(lines.len());
            for (line, text) in lines {
                if text == "1" {
                    terms.push(Vec::new());
                    continue;
                }
                let term = text
                    .split_whitespace()
                    .map(|name| {
                        let s = stage_index(*line, name)?;
                        inputs
                            .iter()
                            .position(|&x| x == s)
                            .ok_or_else(|| err(*line, format!("{name} is not an input")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                terms.push(term);
            }
            Logic::Anf(Anf::new(n, terms).map_err(|e| err(block_line, e.to_string()))?)
        }
    };
    UpdateFn::new(inputs, logic).map_err(|e| err(block_line, e.to_string()))
}
