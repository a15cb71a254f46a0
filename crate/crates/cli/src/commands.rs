use morsekit::arith::{moebius_sieve_within, ExactRational};
use morsekit::experiments::{
    counterexample_chain, default_checkpoints, orthogonality_series, row_decomposition, sign_function,
    CylinderFunction,
};
use morsekit::report::{fmt_f64, Tabular};
use morsekit::sequences::{build_counterexample, thue_toeplitz_partial, window, BitSequence, DivisibilityChain};
use morsekit::spectral::{
    disjointness_witness, empirical_correlation, sigma_hat, stabilization_check, tm_equivalent, valuation_report,
    SigmaCache,
};
use morsekit::{Error, Result};
use serde_json::{json, to_value, Value};

use crate::args::{parse_block, NatList, NatRange, SeqArg};
use crate::output::Output;
use crate::Command;

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    to_value(x).expect("library records serialize")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), T::to_string)
}

/// `f`: the sign `(-1)^{w(a)}` or the indicator of `word` at offset `a`.
fn cylinder(indicator: &Option<String>, offset: i64) -> Result<CylinderFunction<ExactRational>> {
    match indicator {
        None if offset == 0 => Ok(sign_function()),
        None => CylinderFunction::new(offset, 1, vec![ExactRational::one(), -ExactRational::one()]),
        Some(word) => {
            let block = parse_block(word).map_err(Error::Parse)?;
            if block.is_empty() {
                return Err(usage("indicator word must be nonempty"));
            }
            let index = block.bits().iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
            let mut table = vec![ExactRational::zero(); 1 << block.len().min(20)];
            if index >= table.len() {
                return Err(usage("indicator word too long"));
            }
            table[index] = ExactRational::one();
            CylinderFunction::new(offset, block.len() as u32, table)
        }
    }
}

fn describe_f(indicator: &Option<String>, offset: i64) -> String {
    match indicator {
        Some(w) => format!("indicator of {w} at offset {offset}"),
        None => format!("(-1)^w({offset})"),
    }
}

fn checkpoints(list: &Option<NatList>, n: u64) -> Result<Vec<u64>> {
    let cps = match list {
        Some(l) => l.0.clone(),
        None => default_checkpoints(n),
    };
    if cps.is_empty() || cps.iter().any(|&c| c == 0 || c > n) {
        return Err(usage(format!("checkpoints must lie in [1, {n}]")));
    }
    Ok(cps)
}

pub fn dispatch(cmd: &Command, sieve_limit: u64) -> Result<Output> {
    match cmd {
        Command::Sigma { k, odd } => sigma(*k, *odd),
        Command::Valuations { k } => valuations(*k),
        Command::Equiv { k, l } => equiv(k.0, l.0),
        Command::Disjoint { r, s, bound } => disjoint(r.0, s.0, bound.0),
        Command::Correlate { seq, k, n } => correlate(seq, *k, n.0),
        Command::Stabilize { spec, s, levels, n } => stabilize(spec, s.0, levels, n.0),
        Command::Orthogonality { seq, n, checkpoints: cps, indicator, offset } => {
            orthogonality(seq, n.0, cps, indicator, *offset, sieve_limit)
        }
        Command::Rows { n, stage, seq, indicator, offset } => rows(seq, n.0, *stage, indicator, *offset, sieve_limit),
        Command::Counterexample { n, base, checkpoints: cps } => counterexample(n.0, base.0, cps, sieve_limit),
        Command::Toeplitz { family, stage, horizon } => toeplitz(family, *stage, horizon.0),
        Command::Generate { seq, length, start } => generate(seq, length.0, start.0),
    }
}

fn sigma(k: NatRange, odd: bool) -> Result<Output> {
    let mut out = Output::new("sigma", json!({"from": k.lo, "to": k.hi, "odd": odd}), vec!["k", "sigma"]);
    let mut cache = SigmaCache::new();
    let mut plain = String::new();
    for i in k.lo..=k.hi {
        if odd && i % 2 == 0 {
            continue;
        }
        let v = sigma_hat(i, &mut cache);
        plain.push_str(&format!("{i}, {v}\n"));
        out.push(vec![i.to_string(), v.to_string()], json!({"k": i, "sigma": v}));
    }
    out.plain = Some(plain);
    Ok(out)
}

fn valuations(k: NatRange) -> Result<Output> {
    if k.single && k.lo % 2 == 0 {
        return Err(usage(format!("valuations needs odd K, got {}", k.lo)));
    }
    let mut out = Output::new(
        "valuations",
        json!({"from": k.lo, "to": k.hi}),
        vec!["K", "sigma", "is_zero", "v2", "l", "lemma_holds"],
    );
    let mut cache = SigmaCache::new();
    let mut failing = Vec::new();
    for kk in (k.lo | 1..=k.hi).step_by(2) {
        let r = valuation_report(kk, &mut cache)?;
        if !r.lemma_holds {
            failing.push(kk);
        }
        out.push(
            vec![kk.to_string(), r.sigma.to_string(), r.is_zero.to_string(), opt(&r.v2), r.l.to_string(), r.lemma_holds.to_string()],
            value(&r),
        );
    }
    if !failing.is_empty() {
        out.violation = Some(format!("valuation bound fails at K = {failing:?}"));
    }
    Ok(out)
}

fn equiv(k: u64, l: u64) -> Result<Output> {
    let mut cache = SigmaCache::new();
    let eq = tm_equivalent(k, l, &mut cache)?;
    let (a, b) = (sigma_hat(2 * k + 1, &mut cache), sigma_hat(2 * l + 1, &mut cache));
    let mut out = Output::new("equiv", json!({"K": k, "L": l}), vec!["K", "L", "sigma_2K+1", "sigma_2L+1", "equivalent"]);
    out.push(
        vec![k.to_string(), l.to_string(), a.to_string(), b.to_string(), eq.to_string()],
        json!({"K": k, "L": l, "sigma_2K+1": a, "sigma_2L+1": b, "equivalent": eq}),
    );
    Ok(out)
}

fn disjoint(r: u64, s: u64, bound: u64) -> Result<Output> {
    let mut cache = SigmaCache::new();
    let w = disjointness_witness(r, s, bound, &mut cache)?;
    let mut out = Output::new("disjoint", json!({"r": r, "s": s, "bound": bound}), vec!["r", "s", "t", "c1", "c2"]);
    out.push(vec![r.to_string(), s.to_string(), w.t.to_string(), w.c1.to_string(), w.c2.to_string()], value(&w));
    Ok(out)
}

fn correlate(seq: &SeqArg, k: NatRange, n: u64) -> Result<Output> {
    let mut out = Output::new(
        "correlate",
        json!({"seq": seq.describe(), "from": k.lo, "to": k.hi, "N": n}),
        vec!["k", "N", "empirical", "exact", "deviation"],
    );
    let mut cache = SigmaCache::new();
    for kk in k.lo..=k.hi {
        let mut r = seq.with(|w| empirical_correlation(w, kk, n))?;
        if seq.is_thue_morse() {
            r = r.with_exact(sigma_hat(kk, &mut cache));
        }
        out.push(
            vec![kk.to_string(), n.to_string(), r.empirical.to_string(), opt(&r.exact), r.deviation.map_or(String::new(), fmt_f64)],
            value(&r),
        );
    }
    Ok(out)
}

fn stabilize(spec: &SeqArg, s: u64, levels: &NatList, n: u64) -> Result<Output> {
    let SeqArg::Morse(spec) = spec else {
        return Err(Error::Unsupported("stabilize needs a Morse spec".into()));
    };
    let mut cache = SigmaCache::new();
    let points = stabilization_check(spec, s, &levels.0, n, &mut cache)?;
    let mut out = Output::new(
        "stabilize",
        json!({"spec": spec.to_string(), "s": s, "N": n, "levels": levels.0}),
        vec!["level", "scale", "run_length", "envelope", "empirical_abs", "target_abs", "deviation"],
    );
    for p in &points {
        out.push(
            vec![
                p.level.to_string(),
                p.scale.to_string(),
                p.run_length.map_or("unbounded".into(), |r| r.to_string()),
                fmt_f64(p.envelope),
                p.report.empirical.to_string(),
                opt(&p.report.exact),
                p.report.deviation.map_or(String::new(), fmt_f64),
            ],
            value(p),
        );
    }
    Ok(out)
}

fn orthogonality(
    seq: &SeqArg,
    n: u64,
    cps: &Option<NatList>,
    indicator: &Option<String>,
    offset: i64,
    sieve_limit: u64,
) -> Result<Output> {
    let cps = checkpoints(cps, n)?;
    let mut sorted = cps.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let mu = moebius_sieve_within(n, sieve_limit)?;
    let f = cylinder(indicator, offset)?;
    let series = seq.with(|w| orthogonality_series(&f, w, &mu, &sorted))?;
    let mut out = Output::new(
        "orthogonality",
        json!({"seq": seq.describe(), "N": n, "f": describe_f(indicator, offset)}),
        Vec::from(<morsekit::experiments::Checkpoint<ExactRational> as Tabular>::header()),
    );
    for cp in &series.checkpoints {
        out.push(cp.row(), value(cp));
    }
    Ok(out)
}

fn rows(seq: &SeqArg, n: u64, stage: u32, indicator: &Option<String>, offset: i64, sieve_limit: u64) -> Result<Output> {
    let mu = moebius_sieve_within(n, sieve_limit)?;
    let f = cylinder(indicator, offset)?;
    let d = seq.with(|w| row_decomposition(&f, w, stage, &mu, n))?;
    let mut out = Output::new(
        "rows",
        json!({"seq": seq.describe(), "N": n, "stage": stage, "f": describe_f(indicator, offset)}),
        vec!["row", "sum", "terms", "touches_hole", "constant"],
    );
    out.summary = vec![
        format!("period {}  c' {}  c'' {}  M {}  F {}", d.period, d.c_head, d.c_tail, d.m, d.bound),
        format!("E' {}  E'' {}", d.e_head, d.e_tail),
        format!("total {}  flat {}  regrouping exact {}", d.total, d.flat_total, d.regrouping_exact),
        format!(
            "|E'+E''| <= 2^n F: {}  |row| <= M F: {}  hole-free rows {}",
            d.boundary_bound_holds, d.row_bound_holds, d.hole_free_rows
        ),
    ];
    for r in &d.rows {
        out.rows.push(vec![
            r.index.to_string(),
            r.sum.to_string(),
            r.terms.to_string(),
            r.touches_hole.to_string(),
            r.constant.to_string(),
        ]);
    }
    out.records.push(value(&d));
    let mut broken = Vec::new();
    if !d.regrouping_exact {
        broken.push("regrouping");
    }
    if !d.boundary_bound_holds {
        broken.push("boundary bound");
    }
    if !d.row_bound_holds {
        broken.push("row bound");
    }
    if !d.hole_free_rows_constant {
        broken.push("hole-free rows constant");
    }
    if !broken.is_empty() {
        out.violation = Some(broken.join(", "));
    }
    Ok(out)
}

fn counterexample(n: u64, base: u64, cps: &Option<NatList>, sieve_limit: u64) -> Result<Output> {
    let cps = checkpoints(cps, n)?;
    let mut sorted = cps.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let chain = DivisibilityChain::powers(base)?;
    let mu = moebius_sieve_within(n, sieve_limit)?;
    let cs = build_counterexample(&chain, n, &mu)?;
    let report = counterexample_chain(&cs, &mu, &sorted)?;
    let mut out = Output::new(
        "counterexample",
        json!({"N": n, "base": base, "rho": report.rho, "initials": cs.initials().len()}),
        Vec::from(<morsekit::experiments::CounterexampleCorrelation as Tabular>::header()),
    );
    out.summary = vec![format!(
        "rho {}  every N <= {} checked  first bound failure {}  first non-initial failure {}",
        report.rho,
        report.checked_up_to,
        report.first_bound_failure.map_or("none".into(), |n| n.to_string()),
        report.first_non_initial_failure.map_or("none".into(), |n| n.to_string())
    )];
    for cp in &report.checkpoints {
        out.push(cp.row(), value(cp));
    }
    if !report.all_ok() {
        out.violation = Some(format!(
            "inequality chain fails (bound at {:?}, non-initials at {:?})",
            report.first_bound_failure, report.first_non_initial_failure
        ));
    }
    Ok(out)
}

fn toeplitz(family: &str, stage: u32, horizon: u64) -> Result<Output> {
    if !matches!(family, "thue" | "thue-toeplitz") {
        return Err(usage(format!("unknown Toeplitz family {family:?}; expected thue")));
    }
    if horizon == 0 {
        return Err(usage("horizon must be at least 1"));
    }
    let skel = morsekit::sequences::ThueToeplitz.toeplitz_skeleton(stage)?;
    let built = thue_toeplitz_partial(stage, horizon)?;
    let holes: Vec<u64> = built.holes().collect();
    let block = skel.leading_block();
    let mut out = Output::new("toeplitz", json!({"family": "thue", "stage": stage, "horizon": horizon}), vec!["position", "hole"]);
    out.summary = vec![
        format!("period {}", skel.period),
        format!("pattern {}", skel.pattern()),
        format!("B_{stage} {block} (length {})", block.len()),
        format!("holes below {horizon}: {}", holes.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")),
    ];
    out.plain = Some(String::new());
    for &h in &holes {
        out.rows.push(vec![h.to_string(), "true".into()]);
    }
    out.records.push(json!({
        "period": skel.period,
        "pattern": skel.pattern(),
        "leading_block": block.to_string(),
        "leading_block_length": block.len(),
        "hole_positions": holes,
    }));
    if holes.iter().any(|&h| !skel.is_hole(h)) || block.len() as u64 != skel.period - 1 {
        out.violation = Some("built sequence disagrees with the stage skeleton".into());
    }
    Ok(out)
}

fn generate(seq: &SeqArg, length: u64, start: u64) -> Result<Output> {
    let start_i = i64::try_from(start).map_err(|_| usage("start too large"))?;
    let len = usize::try_from(length).map_err(|_| usage("length too large"))?;
    let bits = seq.with(|w| window(w, start_i, len))?;
    let mut out = Output::new("generate", json!({"seq": seq.describe(), "start": start, "length": length}), vec!["n", "bit"]);
    for (i, b) in bits.bits().iter().enumerate() {
        out.rows.push(vec![(start + i as u64).to_string(), b.to_string()]);
    }
    out.records.push(json!({"bits": bits.to_string()}));
    out.plain = Some(format!("{bits}\n"));
    Ok(out)
}
