//! Parameter validation and dispatch of the subcommands.

use std::fmt::Display;

use serde_json::{json, Value};
use spinchar::blocks::{block, block_characters, block_of_char, blocks_of, brauer_data, BlockError, Side};
use spinchar::covers::{alt_classes, sym_classes, ClassInfo, Cover, CoverError, WreathGroup, DEFAULT_GROUP_CAP};
use spinchar::cyclo::CycloNum;
use spinchar::isometry::{
    brauer_composed, build_map, verify_broue_with_cap, IsometryError, IsometryMap, SignOrigin,
};
use spinchar::partitions::{
    bar_core_quotient, core_quotient, from_bar_core_quotient, strict_partitions, Partition, PartitionError,
};
use spinchar::spin_sym::{schur_degree, spin_table_alt, spin_table_sym, SpinCharLabel};
use spinchar::wreath::oracle::{matrix_oracle, table_diffs};
use spinchar::wreath::{LocalGroup, LocalTable, WreathError};

use crate::output::{big, cell, json_doc, report, Grid, SCHEMA};
use crate::{Cli, CliError, Command, Format, GroupArg, Outcome, SymArgs};

/// Largest `n` accepted for `S̃_n` and `Ã_n`.
const MAX_N: usize = 20;

// ---------------------------------------------------------------------------
// Error classification.
// ---------------------------------------------------------------------------

fn from_partition(e: PartitionError) -> CliError {
    CliError::Usage(e.to_string())
}

fn from_block(e: BlockError) -> CliError {
    CliError::Usage(e.to_string())
}

fn from_cover(e: CoverError) -> CliError {
    match e {
        CoverError::Capped { .. } => CliError::Capped(e.to_string()),
        CoverError::BadPrime(_) | CoverError::Partition(_) => CliError::Usage(e.to_string()),
        _ => CliError::Internal(e.to_string()),
    }
}

fn from_wreath(e: WreathError) -> CliError {
    match e {
        WreathError::Cover(c) => from_cover(c),
        WreathError::SizeMismatch { .. } | WreathError::BadLabel(_) | WreathError::Unsupported(_) => {
            CliError::Usage(e.to_string())
        }
        _ => CliError::Internal(e.to_string()),
    }
}

fn from_isometry(e: IsometryError) -> CliError {
    if e.is_capped() {
        return CliError::Capped(e.to_string());
    }
    match e {
        IsometryError::Block(b) => from_block(b),
        IsometryError::Partition(p) => from_partition(p),
        IsometryError::Wreath(w) => from_wreath(w),
        IsometryError::Cover(c) => from_cover(c),
        IsometryError::Unsupported(_) => CliError::Usage(e.to_string()),
        _ => CliError::Internal(e.to_string()),
    }
}

// ---------------------------------------------------------------------------
// Parameter parsing.
// ---------------------------------------------------------------------------

fn parse_cover(s: &str) -> Result<Cover, CliError> {
    s.parse().map_err(CliError::Usage)
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    s.parse().map_err(from_partition)
}

fn parse_side(s: &str) -> Result<Side, CliError> {
    match s.parse().map_err(from_block)? {
        side @ (Side::Sym | Side::Alt) => Ok(side),
        _ => Err(CliError::Usage(format!("side must be sym or alt, not {s:?}"))),
    }
}

fn check_prime(p: usize) -> Result<(), CliError> {
    let prime = p >= 3 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if prime {
        Ok(())
    } else {
        Err(CliError::Usage(format!("p = {p} is not an odd prime")))
    }
}

fn check_n(n: usize) -> Result<(), CliError> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("n = {n} must lie in 1..={MAX_N}")))
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Resource limits taken from the global options.
struct Caps {
    order: Option<u128>,
    conductor: Option<u32>,
}

impl Caps {
    fn check_order(&self, what: &str, order: u128) -> Result<(), CliError> {
        match self.order {
            Some(cap) if order > cap => Err(CliError::Capped(format!("{what} has order {order} > {cap}"))),
            _ => Ok(()),
        }
    }

    /// Cap passed to element enumerations.
    fn enumeration(&self) -> u128 {
        self.order.unwrap_or(DEFAULT_GROUP_CAP)
    }

    fn check_values(&self, values: &[Vec<CycloNum>]) -> Result<(), CliError> {
        let Some(cap) = self.conductor else { return Ok(()) };
        let worst = values.iter().flatten().map(CycloNum::conductor).max().unwrap_or(1);
        if worst > cap {
            return Err(CliError::Capped(format!("values need conductor {worst} > {cap}")));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let caps = Caps { order: cli.max_order, conductor: cli.max_conductor };
    let ok = |text: String| Outcome { text, failed: false };
    match &cli.command {
        Command::Classes { group } => classes(group, cli.format, &caps).map(ok),
        Command::Chartable { group } => chartable(group, cli.format, cli.decimal, &caps),
        Command::Barcore(a) => barquot(a.p, &a.lambda, false, cli.format).map(ok),
        Command::Barquot(a) => barquot(a.p, &a.lambda, true, cli.format).map(ok),
        Command::Core { q, lambda } => hook_core(*q, lambda, cli.format).map(ok),
        Command::Blocks { n, p, side } => blocks(*n, *p, side, cli.format).map(ok),
        Command::VerifyIsometry { n, p, core, side, cover, brauer, no_timing, flip_sign } => {
            let req = IsometryRequest {
                n: *n,
                p: *p,
                core: parse_partition(core)?,
                side: parse_side(side)?,
                cover: parse_cover(cover)?,
                brauer: *brauer,
                timing: !no_timing,
                flip_sign: *flip_sign,
            };
            verify_isometry(&req, cli.format, &caps)
        }
        Command::Selftest => selftest(cli.format),
    }
}

// ---------------------------------------------------------------------------
// classes
// ---------------------------------------------------------------------------

fn class_json<L: Display>(c: &ClassInfo<L>, p_regular: Option<bool>) -> Value {
    let mut v = json!({
        "label": c.label.to_string(),
        "size": big(c.size),
        "centralizer": big(c.centralizer),
        "representative": c.rep.to_string(),
    });
    if let Some(r) = p_regular {
        v["pRegular"] = json!(r);
    }
    v
}

fn class_grid<L: Display>(classes: &[(&ClassInfo<L>, Option<bool>)]) -> Grid {
    Grid {
        header: ["label", "size", "centralizer", "representative"].map(String::from).to_vec(),
        rows: classes
            .iter()
            .map(|(c, _)| vec![c.label.to_string(), c.size.to_string(), c.centralizer.to_string(), c.rep.to_string()])
            .collect(),
    }
}

fn classes(group: &GroupArg, format: Format, caps: &Caps) -> Result<String, CliError> {
    match group {
        GroupArg::Sym(a) | GroupArg::Alt(a) => {
            check_n(a.n)?;
            let cover = parse_cover(&a.cover)?;
            let alt = matches!(group, GroupArg::Alt(_));
            let order = if alt { factorial(a.n).max(2) } else { 2 * factorial(a.n) };
            caps.check_order(if alt { "Ã_n" } else { "S̃_n" }, order)?;
            let rows: Vec<Value>;
            let grid;
            if alt {
                let cl = alt_classes(a.n, cover);
                rows = cl.iter().map(|c| class_json(c, a.p.map(|p| c.is_p_regular(p as u64)))).collect();
                grid = class_grid(&cl.iter().map(|c| (c, None)).collect::<Vec<_>>());
            } else {
                let cl = sym_classes(a.n, cover);
                rows = cl.iter().map(|c| class_json(c, a.p.map(|p| c.is_p_regular(p as u64)))).collect();
                grid = class_grid(&cl.iter().map(|c| (c, None)).collect::<Vec<_>>());
            }
            let doc = json!({
                "schema": SCHEMA,
                "group": if alt { "alt" } else { "sym" },
                "n": a.n,
                "cover": cover.to_string(),
                "order": big(order),
                "classes": rows,
            });
            grid.render(format, &doc)
        }
        GroupArg::Wreath { p, t, cover, alt, oracle: _ } => {
            check_prime(*p)?;
            let cover = parse_cover(cover)?;
            let order = WreathGroup::order_formula(*p, *t);
            caps.check_order("Ñ_p^t S̃_t", order)?;
            let (rows, grid) = if *alt {
                let lg = LocalGroup::with_cap(*p, *t, cover, caps.enumeration()).map_err(from_wreath)?;
                let cl: Vec<_> = lg.alt_classes.iter().map(|c| (&c.info, Some(c.p_regular))).collect();
                (cl.iter().map(|(c, r)| class_json(c, *r)).collect::<Vec<_>>(), class_grid(&cl))
            } else {
                let g = WreathGroup::enumerate(*p, *t, cover, caps.enumeration()).map_err(from_cover)?;
                let cl: Vec<_> = g.classes.iter().map(|c| (&c.info, Some(c.p_regular))).collect();
                (cl.iter().map(|(c, r)| class_json(c, *r)).collect::<Vec<_>>(), class_grid(&cl))
            };
            let doc = json!({
                "schema": SCHEMA,
                "group": if *alt { "wreath-alt" } else { "wreath" },
                "p": p,
                "t": t,
                "cover": cover.to_string(),
                "order": big(if *alt { order / 2 } else { order }),
                "classes": rows,
            });
            grid.render(format, &doc)
        }
    }
}

// ---------------------------------------------------------------------------
// chartable
// ---------------------------------------------------------------------------

/// A character table in display form.
struct TableView {
    chars: Vec<String>,
    blocks: Option<Vec<String>>,
    classes: Vec<(String, u128)>,
    values: Vec<Vec<CycloNum>>,
    order: u128,
}

impl TableView {
    fn local<L: Display>(t: &LocalTable<L>) -> Self {
        TableView {
            chars: t.chars.iter().map(ToString::to_string).collect(),
            blocks: None,
            classes: t.classes.iter().map(|c| (c.label.to_string(), c.size)).collect(),
            values: t.values.clone(),
            order: t.order,
        }
    }

    fn render(&self, mut doc: Value, format: Format, decimal: bool) -> Result<String, CliError> {
        let chars: Vec<Value> = self
            .chars
            .iter()
            .enumerate()
            .map(|(i, label)| {
                let mut v = json!({
                    "label": label,
                    "values": self.values[i].iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
                if decimal {
                    v["decimal"] = json!(self.values[i].iter().map(CycloNum::to_decimal_string).collect::<Vec<_>>());
                }
                if let Some(b) = &self.blocks {
                    v["block"] = json!(b[i]);
                }
                v
            })
            .collect();
        doc["schema"] = json!(SCHEMA);
        doc["order"] = big(self.order);
        doc["classes"] = json!(self
            .classes
            .iter()
            .map(|(l, s)| json!({"label": l, "size": big(*s)}))
            .collect::<Vec<_>>());
        doc["characters"] = json!(chars);
        let mut header = vec!["character".to_string()];
        if self.blocks.is_some() {
            header.push("block".into());
        }
        header.extend(self.classes.iter().map(|(l, _)| l.clone()));
        let rows = self
            .chars
            .iter()
            .enumerate()
            .map(|(i, label)| {
                let mut r = vec![label.clone()];
                if let Some(b) = &self.blocks {
                    r.push(b[i].clone());
                }
                r.extend(self.values[i].iter().map(|v| cell(v, decimal)));
                r
            })
            .collect();
        Grid { header, rows }.render(format, &doc)
    }
}

fn block_tags(chars: &[SpinCharLabel], p: Option<usize>) -> Result<Option<Vec<String>>, CliError> {
    let Some(p) = p else { return Ok(None) };
    check_prime(p)?;
    chars
        .iter()
        .map(|chi| {
            let b = block_of_char(chi, p).map_err(from_block)?;
            let v = b.sign_variant.map(|v| v.to_string()).unwrap_or_default();
            Ok(format!("({}) w={}{v}", b.core, b.weight))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn chartable(group: &GroupArg, format: Format, decimal: bool, caps: &Caps) -> Result<Outcome, CliError> {
    match group {
        GroupArg::Sym(SymArgs { n, cover, p }) | GroupArg::Alt(SymArgs { n, cover, p }) => {
            check_n(*n)?;
            let cover = parse_cover(cover)?;
            let alt = matches!(group, GroupArg::Alt(_));
            caps.check_order("the group", if alt { factorial(*n).max(2) } else { 2 * factorial(*n) })?;
            let view = if alt {
                let t = spin_table_alt(*n, cover);
                TableView {
                    blocks: block_tags(&t.chars, *p)?,
                    chars: t.chars.iter().map(ToString::to_string).collect(),
                    classes: t.classes.iter().map(|c| (c.label.to_string(), c.size)).collect(),
                    values: t.values,
                    order: t.order,
                }
            } else {
                let t = spin_table_sym(*n, cover);
                TableView {
                    blocks: block_tags(&t.chars, *p)?,
                    chars: t.chars.iter().map(ToString::to_string).collect(),
                    classes: t.classes.iter().map(|c| (c.label.to_string(), c.size)).collect(),
                    values: t.values,
                    order: t.order,
                }
            };
            caps.check_values(&view.values)?;
            let doc = json!({"group": if alt { "alt" } else { "sym" }, "n": n, "cover": cover.to_string()});
            Ok(Outcome { text: view.render(doc, format, decimal)?, failed: false })
        }
        GroupArg::Wreath { p, t, cover, alt, oracle } => {
            check_prime(*p)?;
            let cover = parse_cover(cover)?;
            caps.check_order("Ñ_p^t S̃_t", WreathGroup::order_formula(*p, *t))?;
            let lg = LocalGroup::with_cap(*p, *t, cover, caps.enumeration()).map_err(from_wreath)?;
            let (view, diffs) = if *alt {
                let table = lg.alt_table().map_err(from_wreath)?;
                let diffs = if *oracle { Some(table_diffs(&table, &matrix_oracle(&lg).map_err(from_wreath)?.1)) } else { None };
                (TableView::local(&table), diffs)
            } else {
                let table = lg.sym_table().map_err(from_wreath)?;
                let diffs = if *oracle { Some(table_diffs(&table, &matrix_oracle(&lg).map_err(from_wreath)?.0)) } else { None };
                (TableView::local(&table), diffs)
            };
            caps.check_values(&view.values)?;
            let mut doc = json!({
                "group": if *alt { "wreath-alt" } else { "wreath" },
                "p": p,
                "t": t,
                "cover": cover.to_string(),
            });
            let failed = diffs.as_ref().is_some_and(|d| !d.is_empty());
            if let Some(d) = &diffs {
                doc["oracle"] = json!({
                    "entriesCompared": view.chars.len() * view.classes.len(),
                    "diffs": d.iter().map(|(chi, cl, f, o)| json!({
                        "character": chi, "class": cl, "formula": f.to_string(), "oracle": o.to_string(),
                    })).collect::<Vec<_>>(),
                });
            }
            // The oracle report always goes out as JSON: it is the thing checked.
            let format = if diffs.is_some() { Format::Json } else { format };
            Ok(Outcome { text: view.render(doc, format, decimal)?, failed })
        }
    }
}

// ---------------------------------------------------------------------------
// barcore / barquot / core
// ---------------------------------------------------------------------------

fn barquot(p: usize, lambda: &str, full: bool, format: Format) -> Result<String, CliError> {
    check_prime(p)?;
    let lam = parse_partition(lambda)?;
    let cq = bar_core_quotient(&lam, p).map_err(from_partition)?;
    let mut doc = json!({"schema": SCHEMA, "lambda": lam.to_string(), "p": p, "core": cq.core.to_string()});
    if full {
        doc["quotient"] = json!(cq.quotient.to_string());
        doc["weight"] = json!(cq.weight);
        doc["sign"] = json!(cq.sign);
    }
    report(format, &doc)
}

fn hook_core(q: usize, lambda: &str, format: Format) -> Result<String, CliError> {
    if q < 2 {
        return Err(CliError::Usage(format!("q = {q} must be at least 2")));
    }
    let lam = parse_partition(lambda)?;
    let cq = core_quotient(&lam, q);
    let doc = json!({
        "schema": SCHEMA,
        "lambda": lam.to_string(),
        "q": q,
        "core": cq.core.to_string(),
        "quotient": cq.quotient.to_string(),
        "weight": cq.weight,
        "sign": cq.sign,
    });
    report(format, &doc)
}

// ---------------------------------------------------------------------------
// blocks
// ---------------------------------------------------------------------------

fn blocks(n: usize, p: usize, side: &str, format: Format) -> Result<String, CliError> {
    check_n(n)?;
    check_prime(p)?;
    let side = parse_side(side)?;
    let mut out = Vec::new();
    for b in blocks_of(n, p, side).map_err(from_block)? {
        let members = block_characters(&b).map_err(from_block)?;
        let brauer = if b.abelian_defect() {
            let d = brauer_data(&b).map_err(from_block)?;
            json!({
                "defectGroup": d.defect.to_string(),
                "normalizer": d.normalizer,
                "idempotent": d.idempotent.to_string(),
            })
        } else {
            Value::Null
        };
        out.push(json!({
            "core": b.core.to_string(),
            "weight": b.weight,
            "signVariant": b.sign_variant.map(|v| v.to_string()),
            "members": members.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "brauer": brauer,
        }));
    }
    let doc = json!({"schema": SCHEMA, "n": n, "p": p, "side": side.to_string(), "blocks": out});
    report(format, &doc)
}

// ---------------------------------------------------------------------------
// verify-isometry
// ---------------------------------------------------------------------------

struct IsometryRequest {
    n: usize,
    p: usize,
    core: Partition,
    side: Side,
    cover: Cover,
    brauer: bool,
    timing: bool,
    flip_sign: Option<usize>,
}

fn verify_isometry(req: &IsometryRequest, format: Format, caps: &Caps) -> Result<Outcome, CliError> {
    check_n(req.n)?;
    check_prime(req.p)?;
    let b = block(req.n, req.p, &req.core, req.side).map_err(from_block)?;
    if !b.abelian_defect() {
        return Err(CliError::Usage(format!("weight {} ≥ p = {}: only abelian defect is supported", b.weight, b.p)));
    }
    caps.check_order("S̃_n", 2 * factorial(req.n))?;
    caps.check_order("the local group", WreathGroup::order_formula(req.p, b.weight))?;
    let mut map: IsometryMap = if req.brauer {
        brauer_composed(req.n, req.p, &req.core, req.side)
    } else {
        build_map(req.n, req.p, &req.core, req.side, req.cover)
    }
    .map_err(from_isometry)?;
    if let Some(k) = req.flip_sign {
        if k >= map.entries.len() {
            return Err(CliError::Usage(format!("--flip-sign {k}: the map has {} entries", map.entries.len())));
        }
        map = map.with_flipped_sign(k);
    }
    let r = verify_broue_with_cap(&map, req.cover, caps.enumeration()).map_err(from_isometry)?;
    let origin = match map.origin {
        SignOrigin::Formula => json!("formula"),
        SignOrigin::Search { tried, passing } => json!({"search": {"tried": tried, "passing": passing}}),
    };
    let doc = json!({
        "schema": SCHEMA,
        "n": req.n,
        "p": req.p,
        "core": req.core.to_string(),
        "weight": b.weight,
        "side": req.side.to_string(),
        "cover": req.cover.to_string(),
        "brauer": req.brauer,
        "flippedSign": req.flip_sign,
        "target": map.target.to_string(),
        "signOrigin": origin,
        "map": map.entries.iter().map(|e| json!({
            "source": e.source.to_string(),
            "sign": e.sign,
            "target": e.target.to_string(),
        })).collect::<Vec<_>>(),
        "pairsChecked": r.pairs_checked,
        "violations": r.violations.iter().map(|v| json!({
            "x": v.x, "xPrime": v.x_prime, "kind": v.kind.to_string(), "value": v.value,
        })).collect::<Vec<_>>(),
        "convention": r.convention.to_string(),
        "isometry": r.isometry,
        "cSetsChecked": r.c_sets_checked,
        "passed": r.passed(),
        "runtime": if req.timing { json!(r.runtime.as_secs_f64()) } else { Value::Null },
    });
    Ok(Outcome { text: report(format, &doc)?, failed: !r.passed() })
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

struct Check {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, checked: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn selftest(format: Format) -> Result<Outcome, CliError> {
    let mut checks = Vec::new();

    let mut ortho = Check::new("orthonormality n<=6");
    let mut degrees = Check::new("degrees match the product formula");
    for n in 1..=6 {
        for cover in [Cover::Plus, Cover::Minus] {
            let t = spin_table_sym(n, cover);
            for i in 0..t.chars.len() {
                for j in 0..t.chars.len() {
                    let ip = t.inner_product(i, j);
                    ortho.record(ip == CycloNum::from_int(i64::from(i == j)), || format!("S̃_{n}{cover}: <{}, {}>", t.chars[i], t.chars[j]));
                }
                let d = CycloNum::from_int(schur_degree(&t.chars[i].lambda) as i64);
                let id = t.classes.iter().position(|c| c.rep.is_identity()).expect("identity class");
                let got = &t.values[i][id];
                degrees.record(*got == d, || format!("degree of {} is {got}", t.chars[i]));
            }
            let a = spin_table_alt(n, cover);
            for i in 0..a.chars.len() {
                ortho.record(a.inner_product(i, i).is_one(), || format!("Ã_{n}{cover}: |{}|", a.chars[i]));
            }
        }
    }
    checks.push(ortho);
    checks.push(degrees);

    let mut bars = Check::new("bar core/quotient round trip n<=10");
    for n in 0..=10 {
        for lam in strict_partitions(n) {
            for p in [3usize, 5, 7] {
                let back = bar_core_quotient(&lam, p).and_then(|cq| from_bar_core_quotient(&cq.core, &cq.quotient, p));
                bars.record(back.as_ref() == Ok(&lam), || format!("{lam} at p={p}: {back:?}"));
            }
        }
    }
    checks.push(bars);

    let mut oracle = Check::new("local tables match the matrix oracle (p,t)=(3,1),(3,2)");
    for t in [1, 2] {
        for cover in [Cover::Plus, Cover::Minus] {
            let lg = LocalGroup::new(3, t, cover).map_err(from_wreath)?;
            let (sym, alt) = matrix_oracle(&lg).map_err(from_wreath)?;
            let d1 = table_diffs(&lg.sym_table().map_err(from_wreath)?, &sym);
            let d2 = table_diffs(&lg.alt_table().map_err(from_wreath)?, &alt);
            oracle.record(d1.is_empty() && d2.is_empty(), || format!("t={t} {cover}: {} differences", d1.len() + d2.len()));
        }
    }
    checks.push(oracle);

    let mut iso = Check::new("perfect isometries p=3, core (), w=1");
    for side in [Side::Sym, Side::Alt] {
        for cover in [Cover::Plus, Cover::Minus] {
            let m = build_map(3, 3, &Partition::empty(), side, cover).map_err(from_isometry)?;
            let r = verify_broue_with_cap(&m, cover, DEFAULT_GROUP_CAP).map_err(from_isometry)?;
            iso.record(r.passed(), || format!("{side} {cover}: {} violations", r.violations.len()));
        }
    }
    checks.push(iso);

    let passed = checks.iter().all(|c| c.failures.is_empty());
    let doc = json!({
        "schema": SCHEMA,
        "passed": passed,
        "checks": checks.iter().map(|c| json!({
            "name": c.name, "checked": c.checked, "passed": c.failures.is_empty(), "failures": c.failures,
        })).collect::<Vec<_>>(),
    });
    let text = match format {
        Format::Pretty => checks
            .iter()
            .map(|c| format!("{} {} ({} checked)\n", if c.failures.is_empty() { "PASS" } else { "FAIL" }, c.name, c.checked))
            .collect(),
        _ => json_doc(&doc),
    };
    Ok(Outcome { text, failed: !passed })
}
