use std::collections::BTreeMap;
use std::io::{Read, Write};

use nilgrowth::hall::{build_hall_basis, witt_count};
use nilgrowth::scalar::{int, rat_to_string};
use nilgrowth::setalg::{
    enumerate_nilbox, nilcompletion, symmetrize, FiniteSet, FreeProgression, NilboxSpec,
};
use nilgrowth::verify::{
    approx_witness, closure_suite, completion_check, control_witness, decompose_suite,
    dilation_control, freiman_invariance_check, growth_suite, inclusion_suite,
    mutual_control_suite, CoverMode,
};
use nilgrowth::{Error, GroupElement, LieAlgebra, LieElement, Limits, NilGroup, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::doc::{coords_to_element, ElementDocument, SetDocument, SetKind};
use crate::{
    Cli, Command, CoordKind, CoverAction, EnumAction, Format, Mode, SetArgs, Suite, TableFormat,
};

/// What a command produced: text for `dest` and whether any check failed.
pub struct Outcome {
    pub text: String,
    pub dest: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            dest: "-".into(),
            passed: true,
        }
    }

    fn verdict(text: String, passed: bool) -> Self {
        Outcome {
            text,
            dest: "-".into(),
            passed,
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn pretty(value: &impl Serialize) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(io_err)?;
    text.push('\n');
    Ok(text)
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(io_err)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| io_err(format!("{path}: {e}")))?;
    }
    Ok(text)
}

pub fn emit(outcome: &Outcome) -> Result<()> {
    if outcome.dest == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(outcome.text.as_bytes()).map_err(io_err)?;
        out.flush().map_err(io_err)
    } else {
        std::fs::write(&outcome.dest, &outcome.text)
            .map_err(|e| io_err(format!("{}: {e}", outcome.dest)))
    }
}

/// Accepts a full element document or a bare `{"index": "p/q"}` map.
fn parse_coords(algebra: &LieAlgebra, text: &str) -> Result<LieElement> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidArgument(format!("bad element JSON: {e}")))?;
    if value.get("coords").is_some() {
        let doc: ElementDocument = serde_json::from_value(value)
            .map_err(|e| Error::InvalidArgument(format!("bad element document: {e}")))?;
        doc.to_element(algebra)
    } else {
        let map: BTreeMap<usize, String> = serde_json::from_value(value)
            .map_err(|e| Error::InvalidArgument(format!("bad coordinate map: {e}")))?;
        coords_to_element(algebra, &map)
    }
}

fn read_element(group: &NilGroup, text: &str, kind: CoordKind) -> Result<GroupElement> {
    let algebra = group.algebra();
    let dense = algebra.to_dense(&parse_coords(algebra, text)?);
    match kind {
        CoordKind::Alg => group.from_alg_coords(&dense),
        CoordKind::Gp => group.from_group_coords(&dense),
        CoordKind::Type2 => group.from_type2_coords(&dense),
    }
}

fn write_element(group: &NilGroup, x: &GroupElement, kind: CoordKind) -> Result<String> {
    let dense = match kind {
        CoordKind::Alg => group.to_alg_coords(x),
        CoordKind::Gp => group.to_group_coords(x),
        CoordKind::Type2 => group.to_type2_coords(x),
    };
    let algebra = group.algebra();
    pretty(&ElementDocument::from_element(
        algebra,
        &algebra.from_dense(&dense),
    ))
}

fn lattice_set_doc(group: &NilGroup, set: &FiniteSet<Vec<i64>>) -> Result<SetDocument> {
    let lattice = group.lattice()?;
    let logs: FiniteSet<LieElement> = set
        .iter()
        .map(|x| lattice.to_element(group, x).into_log())
        .collect();
    Ok(SetDocument::from_set(
        group.algebra(),
        SetKind::Group,
        &logs,
    ))
}

/// Lattice points of `P(u; L, q, ρ)` in group coordinates.
fn progression(group: &NilGroup, set: &SetArgs, limits: &Limits) -> Result<FiniteSet<Vec<i64>>> {
    FreeProgression::new(group, &set.lengths, set.q, &set.rho)?.lattice_points(limits)
}

fn group_of(set: &SetArgs, limits: &Limits) -> Result<NilGroup> {
    NilGroup::new(set.step.k, set.step.s, limits)
}

fn hall(k: usize, s: usize, format: Format, limits: &Limits) -> Result<Outcome> {
    let basis = build_hall_basis(k, s, limits)?;
    let rows: Vec<Value> = basis
        .elements()
        .iter()
        .map(|e| {
            json!({
                "index": e.index + 1,
                "shape": basis.describe(e.index),
                "order": e.order(),
                "weight": e.weight.entries(),
            })
        })
        .collect();
    let text = match format {
        Format::Json => pretty(&json!({ "k": k, "s": s, "t": basis.len(), "elements": rows }))?,
        Format::Text => {
            let mut out = String::new();
            for e in basis.elements() {
                out.push_str(&format!(
                    "{}\t{}\t{:?}\t{}\n",
                    e.index + 1,
                    e.order(),
                    e.weight.entries(),
                    basis.describe(e.index)
                ));
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn enumerate(kind: &str, set: &SetArgs, count_only: bool, limits: &Limits) -> Result<Outcome> {
    let group = group_of(set, limits)?;
    let doc = if kind == "prog" {
        let points = progression(&group, set, limits)?;
        if count_only {
            return Ok(Outcome::ok(format!("{}\n", points.len())));
        }
        lattice_set_doc(&group, &points)?
    } else {
        let algebra = group.algebra();
        let spec = NilboxSpec::free(algebra, set.lengths.clone())
            .with_q(set.q)
            .with_rho(set.rho.clone());
        let points = enumerate_nilbox(algebra, algebra.basis(), &spec, limits)?;
        if count_only {
            return Ok(Outcome::ok(format!("{}\n", points.len())));
        }
        SetDocument::from_set(algebra, SetKind::Algebra, &points)
    };
    Ok(Outcome::ok(pretty(&doc)?))
}

fn read_set(path: &str, strict: bool, limits: &Limits) -> Result<(LieAlgebra, SetDocument)> {
    let text = read_input(path)?;
    let doc: SetDocument = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("bad set document: {e}")))?;
    let algebra = LieAlgebra::new(doc.header.k, doc.header.s, limits)?;
    if !strict {
        let set: FiniteSet<LieElement> = doc
            .elements
            .iter()
            .map(|e| e.to_element(&algebra))
            .collect::<Result<_>>()?;
        return Ok((
            algebra.clone(),
            SetDocument::from_set(&algebra, doc.header.kind, &set),
        ));
    }
    let set = doc.to_set(&algebra)?;
    let canonical = SetDocument::from_set(&algebra, doc.header.kind, &set);
    Ok((algebra, canonical))
}

fn growth(set: &SetArgs, nmax: usize, limits: &Limits) -> Result<nilgrowth::verify::GrowthReport> {
    let group = group_of(set, limits)?;
    let lattice = group.lattice()?;
    let a = symmetrize(lattice.as_ref(), &progression(&group, set, limits)?);
    let w = approx_witness(lattice.as_ref(), &a, CoverMode::Greedy, limits)?;
    growth_suite(lattice.as_ref(), &a, &w, nmax, limits)
}

fn cover(action: &CoverAction, limits: &Limits) -> Result<Outcome> {
    match action {
        CoverAction::Approx { set, mode } => {
            let group = group_of(set, limits)?;
            let lattice = group.lattice()?;
            let a = symmetrize(lattice.as_ref(), &progression(&group, set, limits)?);
            let mode = match mode {
                Mode::Greedy => CoverMode::Greedy,
                Mode::Exhaustive => CoverMode::Exhaustive,
            };
            let w = approx_witness(lattice.as_ref(), &a, mode, limits)?;
            let text = pretty(&json!({
                "size": a.len(),
                "K": w.k,
                "mode": w.mode,
                "certified": w.certified,
                "witness": lattice_set_doc(&group, &w.x)?,
            }))?;
            Ok(Outcome::verdict(text, w.certified))
        }
        CoverAction::Control {
            set,
            lengths2,
            q2,
            rho2,
        } => {
            let group = group_of(set, limits)?;
            let lattice = group.lattice()?;
            let a = progression(&group, set, limits)?;
            let other = SetArgs {
                step: set.step.clone(),
                lengths: lengths2.clone(),
                q: *q2,
                rho: rho2.clone(),
            };
            let b = progression(&group, &other, limits)?;
            let w = control_witness(lattice.as_ref(), &a, &b, limits)?;
            let text = pretty(&json!({
                "size_a": a.len(),
                "size_b": b.len(),
                "K": w.k,
                "size_ratio": rat_to_string(&w.size_ratio),
                "certified": w.certified,
                "witness": lattice_set_doc(&group, &w.x)?,
            }))?;
            Ok(Outcome::verdict(text, w.certified))
        }
    }
}

fn verify(suite: &Suite, limits: &Limits) -> Result<Outcome> {
    match suite {
        Suite::Growth { set, nmax } => {
            let r = growth(set, *nmax, limits)?;
            Ok(Outcome::verdict(pretty(&r)?, r.holds))
        }
        Suite::Inclusion {
            step,
            lengths,
            rho,
            rho_prime,
        } => {
            let r = inclusion_suite(step.k, step.s, lengths, rho, rho_prime, limits)?;
            Ok(Outcome::verdict(pretty(&r)?, r.holds))
        }
        Suite::Mutual {
            step,
            lengths,
            lambda,
            q,
            q_prime,
            dilate,
        } => match dilate {
            Some(m) => {
                let r = dilation_control(step.k, step.s, lengths, *m, limits)?;
                Ok(Outcome::verdict(pretty(&r)?, r.control.certified))
            }
            None => {
                let r =
                    mutual_control_suite(step.k, step.s, lengths, lambda, *q, *q_prime, limits)?;
                Ok(Outcome::verdict(pretty(&r)?, r.holds))
            }
        },
        Suite::Freiman { step, lengths, map } => {
            let group = NilGroup::new(step.k, step.s, limits)?;
            let factor = match map.as_str() {
                "identity" => int(1),
                other => match other
                    .strip_prefix("dilate:")
                    .and_then(|m| m.parse::<i64>().ok())
                {
                    Some(m) if m != 0 => int(m),
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                        "map must be identity or dilate:M with M a nonzero integer, got {other:?}"
                    )))
                    }
                },
            };
            let r =
                freiman_invariance_check(&group, lengths, |x| group.dilate(x, &factor), limits)?;
            let passed = r.holds || !r.proviso_holds;
            Ok(Outcome::verdict(pretty(&r)?, passed))
        }
        Suite::Closure {
            step,
            trials,
            max_size,
            m,
            seed,
            lengths,
        } => match lengths {
            Some(lengths) => {
                let algebra = LieAlgebra::new(step.k, step.s, limits)?;
                let gens: Vec<LieElement> = (0..step.k).map(|i| algebra.generator(i)).collect();
                let r = completion_check(&algebra, &gens, lengths, limits)?;
                Ok(Outcome::verdict(pretty(&r)?, r.holds))
            }
            None => {
                let r = closure_suite(step.k, step.s, *trials, *max_size, *m, *seed, limits)?;
                Ok(Outcome::verdict(pretty(&r)?, r.holds))
            }
        },
        Suite::Decompose { lengths } => {
            let r = decompose_suite(lengths, limits)?;
            Ok(Outcome::verdict(pretty(&r)?, r.holds))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let limits = Limits::default().with_max_set_size(cli.max_set_size);
    let limits = &limits;
    match &cli.command {
        Command::Hall { step, format } => hall(step.k, step.s, *format, limits),
        Command::Witt { k, r } => Ok(Outcome::ok(format!("{}\n", witt_count(*k, *r)?))),
        Command::Mul { step, x, y, coords } => {
            let group = NilGroup::new(step.k, step.s, limits)?;
            let x = read_element(&group, x, *coords)?;
            let y = read_element(&group, y, *coords)?;
            Ok(Outcome::ok(write_element(
                &group,
                &group.mul(&x, &y)?,
                *coords,
            )?))
        }
        Command::Pow {
            step,
            x,
            eta,
            coords,
        } => {
            let group = NilGroup::new(step.k, step.s, limits)?;
            let x = read_element(&group, x, *coords)?;
            Ok(Outcome::ok(write_element(
                &group,
                &group.pow(&x, eta),
                *coords,
            )?))
        }
        Command::Coords { step, x, from, to } => {
            let group = NilGroup::new(step.k, step.s, limits)?;
            let x = read_element(&group, x, *from)?;
            Ok(Outcome::ok(write_element(&group, &x, *to)?))
        }
        Command::Prog {
            action: EnumAction::Enum { set, count_only },
        } => enumerate("prog", set, *count_only, limits),
        Command::Nilbox {
            action: EnumAction::Enum { set, count_only },
        } => enumerate("nilbox", set, *count_only, limits),
        Command::Nilcompletion { input } => {
            let (algebra, doc) = read_set(input, true, limits)?;
            if doc.header.kind != SetKind::Algebra {
                return Err(Error::InvalidArgument(
                    "nilcompletion needs an algebra set".into(),
                ));
            }
            let bar = nilcompletion(&algebra, &doc.to_set(&algebra)?, limits)?;
            Ok(Outcome::ok(pretty(&SetDocument::from_set(
                &algebra,
                SetKind::Algebra,
                &bar,
            ))?))
        }
        Command::Growth { set, nmax, format } => {
            let r = growth(set, *nmax, limits)?;
            let text = match format {
                TableFormat::Csv => r.to_csv(),
                TableFormat::Json => pretty(&r)?,
            };
            Ok(Outcome::verdict(text, r.holds))
        }
        Command::Cover { action } => cover(action, limits),
        Command::Verify { suite } => verify(suite, limits),
        Command::Export { input, out } | Command::Import { input, out } => {
            let strict = matches!(cli.command, Command::Import { .. });
            let (_, doc) = read_set(input, strict, limits)?;
            Ok(Outcome {
                text: pretty(&doc)?,
                dest: out.clone(),
                passed: true,
            })
        }
    }
}
