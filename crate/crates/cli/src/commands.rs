use crate::emit::{Outcome, Table};
use crate::input::{load_json, InputArgs};
use crate::{cache, AtomCountArgs, FactorizeArgs, InvariantArgs, LengthArgs, TransferArgs};
use anyhow::{bail, Context as _, Result};
use krull_core::atoms::{enumerate_atoms, AtomSet, DEFAULT_CAP};
use krull_core::factorization::{self as fz, catenary_profile, lengths_of};
use krull_core::invariants::{
    delta_set, delta_star, elasticity, min_abs_irred_witness, min_delta_exact, monoid_catenary,
    monoid_omega_tame, omega, CoverLimits, ProductSweep,
};
use krull_core::length_systems::{
    additive_closure_probe, fit_aamp, fit_progression, member, LengthSystemFamily,
};
use krull_core::lengths::{LengthOracle, LengthSet};
use krull_core::presets::{self, Computed, Preset, FAMILY_NAMES};
use krull_core::sequence::{mv, Sequence};
use krull_core::transfer::{
    builtin, check_transfer, count_lifted_atoms, count_lifted_atoms_brute_force, lengths_preserved,
    MapFile, TransferMap,
};
use krull_core::Exec;
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::Instant;

pub struct Context {
    pub exec: Exec,
    pub bound: Option<u32>,
    pub cache_dir: Option<PathBuf>,
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn echo(p: &Preset) -> Value {
    json!({
        "name": p.name,
        "group": p.group().to_string(),
        "elements": p.alphabet.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}

fn atoms_for(p: &Preset, exec: &Exec) -> Result<AtomSet> {
    Ok(enumerate_atoms(p.alphabet_arc(), DEFAULT_CAP, exec)?)
}

fn rows(headers: &[&str], rows: Vec<Vec<String>>) -> Option<Table> {
    Some(Table {
        headers: headers.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

pub fn atoms(ctx: &Context, a: &InputArgs) -> Result<Outcome> {
    let p = a.resolve()?;
    let atoms = atoms_for(&p, &ctx.exec)?;
    let list: Vec<(String, u64)> = (0..atoms.len())
        .map(|i| (atoms.render(i), mv::len(atoms.get(i))))
        .collect();
    let value = json!({
        "input": echo(&p),
        "count": atoms.len(),
        "davenport": atoms.davenport(),
        "atoms": list.iter().map(|(s, l)| json!({"atom": s, "length": l})).collect::<Vec<_>>(),
    });
    let table = rows(
        &["atom", "length"],
        list.into_iter()
            .map(|(s, l)| vec![s, l.to_string()])
            .collect(),
    );
    Ok(Outcome {
        value,
        mismatch: false,
        table,
    })
}

pub fn factorize(ctx: &Context, a: &FactorizeArgs) -> Result<Outcome> {
    let p = a.input.resolve()?;
    let atoms = atoms_for(&p, &ctx.exec)?;
    let b = Sequence::parse(p.alphabet_arc(), &a.block)?;
    let zs = fz::factorize(&atoms, &b, a.limit)?;
    let value = json!({
        "input": echo(&p),
        "block": b.to_string(),
        "count": zs.len(),
        "factorizations": zs.iter().map(|z| z.render(&atoms)).collect::<Vec<_>>(),
        "lengths": lengths_of(&zs),
        "catenary": catenary_profile(&zs),
    });
    let table = rows(
        &["factorization", "length"],
        zs.iter()
            .map(|z| vec![z.render(&atoms), z.len().to_string()])
            .collect(),
    );
    Ok(Outcome {
        value,
        mismatch: false,
        table,
    })
}

const INVARIANTS: &[&str] = &[
    "delta",
    "delta_star",
    "unions",
    "elasticity",
    "omega",
    "tame",
    "catenary",
    "abs_irred",
];

pub fn invariants(ctx: &Context, a: &InvariantArgs) -> Result<Outcome> {
    for k in &a.only {
        if !INVARIANTS.contains(&k.as_str()) {
            bail!("unknown invariant `{k}`; known: {}", INVARIANTS.join(", "));
        }
    }
    let bound = ctx.bound.unwrap_or(5);
    if bound == 0 || a.unions == 0 {
        bail!("bounds must be positive");
    }
    let cat_bound = a.catenary_bound.unwrap_or(bound.min(4));
    let p = a.input.resolve()?;
    let only: BTreeSet<&str> = a.only.iter().map(String::as_str).collect();
    let material = json!({
        "command": "invariants",
        "version": VERSION,
        "input": echo(&p),
        "characteristic": p.characteristic,
        "bound": bound,
        "catenary_bound": cat_bound,
        "unions": a.unions,
        "only": only,
        "max_nodes": a.max_nodes,
    });
    let start = Instant::now();
    let mut report = cache::get_or_compute(ctx.cache_dir.as_deref(), &material, || {
        compute_invariants(&p, ctx.exec, bound, cat_bound, a, &only)
    })?;
    if a.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    let mismatch = report["all_expectations_pass"] == json!(false);
    let table = report["unions"].as_object().map(|m| {
        let mut rs: Vec<Vec<String>> = m
            .values()
            .map(|u| {
                vec![
                    u["k"].to_string(),
                    u["lambda_k"].to_string(),
                    u["rho_k"].to_string(),
                    u["set"].to_string(),
                ]
            })
            .collect();
        rs.sort_by_key(|r| r[0].parse::<u64>().unwrap_or(0));
        Table {
            headers: ["k", "lambda_k", "rho_k", "set"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            rows: rs,
        }
    });
    Ok(Outcome {
        value: report,
        mismatch,
        table,
    })
}

fn bounded(value: Value, exact: bool, bound: Option<u64>) -> Value {
    json!({"value": value, "exact": exact, "bound": if exact { None } else { bound }})
}

fn compute_invariants(
    p: &Preset,
    exec: Exec,
    bound: u32,
    cat_bound: u32,
    a: &InvariantArgs,
    only: &BTreeSet<&str>,
) -> Result<Value> {
    let want = |k: &str| only.is_empty() || only.contains(k);
    let atoms = atoms_for(p, &exec)?;
    let limits = CoverLimits {
        max_nodes: a.max_nodes,
    };
    let mut out = Map::new();
    let mut flags = Map::new();
    let mut computed: BTreeMap<&str, Computed> = BTreeMap::new();
    out.insert("input".into(), echo(p));
    out.insert("bound".into(), json!(bound));
    out.insert(
        "atoms".into(),
        json!({"count": atoms.len(), "davenport": atoms.davenport()}),
    );
    computed.insert("atom_count", Computed::Int(atoms.len() as u64));
    computed.insert("davenport", Computed::Int(atoms.davenport()));

    let mut omega_value = None;
    if want("omega") || want("tame") || want("delta") || want("catenary") {
        let (om, t) = if want("tame") {
            let (o, t) = monoid_omega_tame(&atoms, limits, &exec)?;
            (o, Some(t))
        } else {
            let per = exec.try_map(&(0..atoms.len()).collect::<Vec<_>>(), |&u| {
                omega(&atoms, u, limits)
            })?;
            (per.into_iter().max().unwrap_or(0), None)
        };
        omega_value = Some(om);
        if want("omega") {
            out.insert("omega".into(), bounded(json!(om), true, None));
            flags.insert("omega".into(), json!(true));
            computed.insert("omega", Computed::Int(om));
        }
        if let Some(t) = t {
            out.insert("tame".into(), bounded(json!(t), true, None));
            flags.insert("tame".into(), json!(true));
            computed.insert("tame", Computed::Int(t));
        }
    }

    if want("catenary") {
        let cat = monoid_catenary(&atoms, cat_bound as usize, &exec)?;
        // c ≤ ω always, so reaching ω pins c down.
        let exact = omega_value == Some(cat.value.c);
        out.insert(
            "catenary".into(),
            bounded(json!(cat.value), exact, Some(cat_bound as u64)),
        );
        flags.insert("catenary".into(), json!(exact));
        flags.insert("monotone_catenary".into(), json!(false));
        computed.insert("catenary", Computed::Int(cat.value.c));
        computed.insert("monotone_catenary", Computed::Int(cat.value.c_mon));
    }

    if want("delta") {
        let swept = delta_set(&atoms, bound as usize, &exec).value;
        // Every element of Δ is a multiple of min Δ = gcd, and max Δ ≤ c - 2 ≤ ω - 2.
        let exact = match (min_delta_exact(atoms.vectors())?, omega_value) {
            (None, _) => swept.is_empty(),
            (Some(g), Some(om)) if om >= 2 => {
                let full: BTreeSet<u64> =
                    (1..).map(|i| i * g).take_while(|&x| x + 2 <= om).collect();
                swept == full
            }
            _ => false,
        };
        let v: Vec<u64> = swept.iter().copied().collect();
        out.insert("delta".into(), bounded(json!(v), exact, Some(bound as u64)));
        flags.insert("delta".into(), json!(exact));
        computed.insert("delta", Computed::Set(v));
    }

    if want("delta_star") {
        if atoms.alphabet().len() <= 20 {
            let ds = delta_star(&atoms, &exec)?;
            let v: Vec<u64> = ds.value.into_iter().collect();
            out.insert("delta_star".into(), bounded(json!(v), ds.exact, ds.bound));
            flags.insert("delta_star".into(), json!(ds.exact));
            computed.insert("delta_star", Computed::Set(v));
        } else {
            out.insert("delta_star".into(), Value::Null);
        }
    }

    if want("unions") {
        let mut sweep = ProductSweep::new(&atoms, exec);
        let mut us = Map::new();
        for k in 1..=a.unions as usize {
            let set = sweep.union_set(k);
            let (lo, hi) = (set.first().unwrap_or(0), set.last().unwrap_or(0));
            if k == 2 {
                computed.insert("union_2", Computed::Set(set.to_vec()));
            }
            us.insert(
                k.to_string(),
                json!({"k": k, "set": set, "lambda_k": lo, "rho_k": hi, "exact": true}),
            );
        }
        out.insert("unions".into(), Value::Object(us));
        flags.insert("unions".into(), json!(true));
    }

    if want("elasticity") {
        let e = elasticity(&atoms, bound as usize, &exec);
        out.insert(
            "elasticity".into(),
            bounded(json!(e.value.to_string()), e.exact, e.bound),
        );
        flags.insert("elasticity".into(), json!(e.exact));
        computed.insert(
            "elasticity",
            Computed::Ratio(*e.value.numer(), *e.value.denom()),
        );
    }

    if want("abs_irred") {
        let w = min_abs_irred_witness(&atoms, 16)?;
        let v = w.as_ref().map(|w| {
            json!({
                "s": w.s,
                "atoms": w.atoms.iter().map(|&u| atoms.render(u)).collect::<Vec<_>>(),
                "exponents": w.exponents,
            })
        });
        out.insert("min_abs_irred_witness".into(), v.unwrap_or(Value::Null));
        if let Some(w) = w {
            computed.insert("min_abs_irred_witness", Computed::Int(w.s as u64));
        }
    }

    if let Some(ch) = &p.characteristic {
        let n = count_lifted_atoms(ch, &exec)?;
        let n = u64::try_from(n).context("lifted atom count overflows u64")?;
        out.insert("lifted_atom_count".into(), json!(n));
        computed.insert("lifted_atom_count", Computed::Int(n));
        computed.insert("lifted_atom_count_quadratic_form", Computed::Int(n));
    }

    let (table, all_pass) = expectation_table(p, &computed);
    out.insert("exact_flags".into(), Value::Object(flags));
    out.insert("expectations".into(), table);
    out.insert("all_expectations_pass".into(), json!(all_pass));
    Ok(Value::Object(out))
}

/// Rows `{key, expected, formula, computed, pass}`; entries whose value was
/// not computed are reported with `pass: null` and do not count as failures.
fn expectation_table(p: &Preset, computed: &BTreeMap<&str, Computed>) -> (Value, bool) {
    let mut all = true;
    let rows: Vec<Value> = p
        .expected
        .iter()
        .map(|(k, ev)| {
            let c = computed.get(k.as_str());
            let pass = c.map(|c| ev.value.matches(c));
            all &= pass != Some(false);
            json!({"key": k, "expected": ev.value, "formula": ev.formula, "computed": c, "pass": pass})
        })
        .collect();
    (Value::Array(rows), all)
}

pub fn transfer_check(ctx: &Context, a: &TransferArgs) -> Result<Outcome> {
    let bound = ctx.bound.unwrap_or(8);
    if bound < 2 {
        bail!("transfer checks need --bound ≥ 2");
    }
    let (map, expect_t1, expect_t2) = match a.map.as_str() {
        "prop712" => (builtin::five_point_to_c3(), Some(true), Some(true)),
        "prop713" => (builtin::nine_point_to_c4(), Some(true), Some(true)),
        "collapse" => (builtin::collapse(), Some(false), None),
        file => (
            TransferMap::from_file(&load_json::<MapFile>(file)?)?,
            None,
            None,
        ),
    };
    let rep = check_transfer(&map, bound, &ctx.exec)?;
    let lengths = if a.no_lengths {
        None
    } else {
        Some(lengths_preserved(&map, bound, &ctx.exec)?)
    };
    let expect_lengths = expect_t2;
    let ok_lengths = lengths.as_ref().map(|l| l.is_none());
    let mismatch = expect_t1.is_some_and(|e| e != rep.t1)
        || expect_t2.is_some_and(|e| e != rep.t2)
        || matches!((expect_lengths, ok_lengths), (Some(e), Some(o)) if e != o);
    let value = json!({
        "map": a.map,
        "source": map.source().elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "target": map.target().elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "bound": bound,
        "t1_ok": rep.t1,
        "t1_counterexample": rep.t1_counterexample,
        "t2_ok": rep.t2,
        "t2_counterexample": rep.t2_counterexample,
        "lengths_preserved": ok_lengths,
        "length_counterexample": lengths.flatten(),
        "expected": {"t1_ok": expect_t1, "t2_ok": expect_t2, "lengths_preserved": expect_lengths},
    });
    Ok(Outcome {
        value,
        mismatch,
        table: None,
    })
}

pub fn atom_count(ctx: &Context, a: &AtomCountArgs) -> Result<Outcome> {
    let p = a.input.resolve()?;
    let ch = p
        .characteristic
        .as_ref()
        .context("input has no characteristic; use a hypersurface or cyclic preset, --characteristic or --matrix")?;
    let n = count_lifted_atoms(ch, &ctx.exec)?;
    let brute = a
        .brute_force
        .map(|m| count_lifted_atoms_brute_force(ch, m, &ctx.exec))
        .transpose()?;
    let n64 = u64::try_from(n).context("count overflows u64")?;
    let computed = BTreeMap::from([
        ("lifted_atom_count", Computed::Int(n64)),
        ("lifted_atom_count_quadratic_form", Computed::Int(n64)),
    ]);
    let mut pr = p.clone();
    pr.expected.retain(|k, _| computed.contains_key(k.as_str()));
    let (table, all_pass) = expectation_table(&pr, &computed);
    let brute_mismatch = brute.is_some_and(|b| b != n);
    let value = json!({
        "input": echo(&p),
        "classes": ch.classes.iter().map(|(g, m)| json!({"class": g.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        "total_primes": ch.total_primes(),
        "count": n64,
        "brute_force": brute.map(|b| b as u64),
        "expectations": table,
        "all_expectations_pass": all_pass,
    });
    Ok(Outcome {
        value,
        mismatch: !all_pass || brute_mismatch,
        table: None,
    })
}

pub fn preset_list() -> Result<Outcome> {
    let list: Vec<Value> = FAMILY_NAMES
        .iter()
        .map(|(n, a)| json!({"name": n, "params": a}))
        .collect();
    let table = rows(
        &["name", "params"],
        FAMILY_NAMES
            .iter()
            .map(|(n, a)| vec![n.to_string(), a.to_string()])
            .collect(),
    );
    Ok(Outcome {
        value: json!({"families": list}),
        mismatch: false,
        table,
    })
}

/// The preset as an alphabet file that `--alphabet` reads back.
pub fn preset_build(a: &InputArgs) -> Result<Outcome> {
    let p = a.resolve()?;
    let mut v = json!({
        "name": p.name,
        "group": p.group(),
        "elements": p.alphabet.elements().iter().map(|e| e.coords()).collect::<Vec<_>>(),
        "expected": p.expected,
    });
    if let Some(ch) = &p.characteristic {
        v["characteristic"] = serde_json::to_value(ch.to_file())?;
    }
    Ok(Outcome::plain(v))
}

fn parse_set(s: &str) -> Result<LengthSet> {
    let body = s.trim().trim_start_matches('{').trim_end_matches('}');
    let xs = body
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .with_context(|| format!("bad length `{t}`"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LengthSet::from_iter(xs))
}

fn parse_family(s: &str) -> Result<LengthSystemFamily> {
    let lower = s.trim().to_ascii_lowercase();
    Ok(match lower.as_str() {
        "c3" => LengthSystemFamily::C3,
        "c4" => LengthSystemFamily::C4,
        _ => match lower.strip_prefix("thm74:").and_then(|r| r.split_once(',')) {
            Some((r, al)) => {
                let (r, alpha): (u32, u32) = (r.trim().parse()?, al.trim().parse()?);
                if r + alpha < 3 {
                    bail!("thm74 family needs r + alpha ≥ 3");
                }
                LengthSystemFamily::Simplex { r, alpha }
            }
            None => bail!("unknown length system `{s}`; use C3, C4 or thm74:r,alpha"),
        },
    })
}

fn fit_value(l: &LengthSet, d: Option<u64>) -> Value {
    let ap = fit_progression(l);
    let d = d.or(ap.flatten()).or_else(|| l.deltas().into_iter().next());
    json!({
        "set": l,
        "is_progression": ap.is_some(),
        "difference": ap.flatten(),
        "aamp": d.and_then(|d| fit_aamp(l, d)),
    })
}

pub fn lengths(ctx: &Context, a: &LengthArgs) -> Result<Outcome> {
    if let Some(f) = &a.member {
        let l = parse_set(a.lengths.as_deref().context("--member needs --lengths")?)?;
        if l.is_empty() {
            bail!("--lengths must be nonempty");
        }
        let fam = parse_family(f)?;
        let w = member(fam, &l);
        return Ok(Outcome::plain(
            json!({"family": f, "set": l, "member": w.is_some(), "witness": w}),
        ));
    }
    if let Some(l) = &a.lengths {
        let l = parse_set(l)?;
        if let Some(other) = &a.sumset {
            let m = parse_set(other)?;
            return Ok(Outcome::plain(
                json!({"left": l, "right": m, "sumset": l.sumset(&m)}),
            ));
        }
        return Ok(Outcome::plain(fit_value(&l, a.fit)));
    }
    let p = a.input.resolve()?;
    let atoms = atoms_for(&p, &ctx.exec)?;
    let bound = ctx.bound.unwrap_or(4) as u64;
    if a.closure_probe {
        let verify = a.verify_bound.map_or(2 * bound, u64::from);
        let probe = additive_closure_probe(&atoms, bound, verify, &ctx.exec);
        return Ok(Outcome::plain(json!({"input": echo(&p), "probe": probe})));
    }
    if let Some(b) = &a.block {
        let seq = Sequence::parse(p.alphabet_arc(), b)?;
        if !seq.is_zero_sum()? {
            bail!("`{b}` is not a zero-sum sequence");
        }
        let l = LengthOracle::new(&atoms).lengths(seq.mult());
        let mut v = fit_value(&l, a.fit);
        v["block"] = json!(seq.to_string());
        v["input"] = echo(&p);
        return Ok(Outcome::plain(v));
    }
    let mut sweep = ProductSweep::new(&atoms, ctx.exec);
    let sets: Vec<LengthSet> = sweep
        .distinct_length_sets(bound as usize)
        .into_iter()
        .collect();
    let table = rows(
        &["set", "min", "max"],
        sets.iter()
            .map(|l| {
                vec![
                    l.to_string(),
                    l.first().unwrap_or(0).to_string(),
                    l.last().unwrap_or(0).to_string(),
                ]
            })
            .collect(),
    );
    let value = json!({"input": echo(&p), "bound": bound, "count": sets.len(), "sets": sets});
    Ok(Outcome {
        value,
        mismatch: false,
        table,
    })
}

pub fn decompose(ctx: &Context, a: &InputArgs) -> Result<Outcome> {
    let p = a.resolve()?;
    let parts = presets::decompose(&p.alphabet_arc(), &ctx.exec)?;
    let parts: Vec<Vec<String>> = parts
        .iter()
        .map(|c| c.iter().map(|e| e.to_string()).collect())
        .collect();
    let table = rows(
        &["component", "element"],
        parts
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |e| vec![i.to_string(), e.clone()]))
            .collect(),
    );
    let value = json!({"input": echo(&p), "count": parts.len(), "components": parts});
    Ok(Outcome {
        value,
        mismatch: false,
        table,
    })
}

pub fn divisor_theory(ctx: &Context, a: &InputArgs) -> Result<Outcome> {
    let p = a.resolve()?;
    let v = presets::check_divisor_theory(&p, &ctx.exec)?;
    Ok(Outcome::plain(
        json!({"input": echo(&p), "holds": v.holds, "reason": v.reason}),
    ))
}
