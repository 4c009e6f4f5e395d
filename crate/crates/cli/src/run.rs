use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sumcore::setfile::{parse_set_text, write_plain, write_rle};
use sumcore::{
    banach_density, build_model, definable_witness_search, find_regular_point, find_square_witness,
    find_triangular_witness, generate_set, growth_curve, lower_banach_density, max_ladder, min_translate_cover,
    ramsey_upgrade, rational, verify_cover, verify_definable, verify_density_certificate, verify_good_point,
    verify_ladder, verify_square, verify_triangular, CoverMode, CoverOutcome, CoverRequest, DefinableOutcome, DenseSet,
    DensityReport, Family, GroupModel, Rational, RegularPoint, Scorer, SearchMode, SquareOutcome, TriangularOutcome,
    TriangularWitness, Upgraded,
};

use crate::config::{ExperimentConfig, FamilyName, Mode, Operation, ScorerName, SetEncoding};
use crate::error::{CliError, Result};
use crate::report::{Report, Status, Table};
use crate::witness_json::parse_witness_json;

struct Done {
    result: Value,
    certificate: Value,
    verification: Option<bool>,
    status: Status,
    table: Option<Table>,
}

impl Done {
    fn new(result: Value, certificate: Value, verification: Option<bool>, status: Status) -> Self {
        Done { result, certificate, verification, status, table: None }
    }
}

fn val<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report data is plain")
}

fn search_mode(m: Mode) -> SearchMode {
    match m {
        Mode::Exact => SearchMode::Exact,
        Mode::Heuristic => SearchMode::Heuristic,
    }
}

/// Builds the model and set, runs the operation and re-verifies whatever it
/// emits. A certificate failing its own check is reported as an error.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let clock = Instant::now();
    let model = build_model(&cfg.model)?;
    let a = generate_set(&model, &cfg.set)?;
    let kind = cfg.operation.kind();
    let done = dispatch(cfg, &model, &a)?;
    if done.verification == Some(false) {
        return Err(CliError::Verification(kind));
    }
    Ok(Report {
        kind,
        parameters: cfg.clone(),
        result: done.result,
        certificate: done.certificate,
        verification: done.verification,
        wall_time_ms: clock.elapsed().as_millis() as u64,
        status: done.status,
        table: done.table,
    })
}

fn dispatch(cfg: &ExperimentConfig, model: &GroupModel, a: &DenseSet) -> Result<Done> {
    let budget = cfg.budget;
    Ok(match &cfg.operation {
        Operation::Gen { encoding } => {
            let data = match encoding {
                SetEncoding::Rle => write_rle(a),
                SetEncoding::Plain => write_plain(a),
            };
            let back = parse_set_text(&data, a.universe())?;
            let result = json!({
                "universe": a.universe(),
                "cardinality": a.len(),
                "density": rational::to_pq(&Rational::new(a.len() as i64, a.universe() as i64)),
                "encoding": encoding,
                "data": data,
            });
            Done::new(result, Value::Null, Some(back == *a), Status::Found)
        }
        Operation::Density { n, schedule, lower } => {
            let windows = match (n, schedule) {
                (Some(n), None) => vec![*n],
                (None, Some(s)) => s.clone(),
                _ => unreachable!("validated"),
            };
            let reports = windows
                .iter()
                .map(|&w| if *lower { lower_banach_density(a, model, w) } else { banach_density(a, model, w) })
                .collect::<sumcore::Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| check_extreme(a, r, *lower));
            let windows: Vec<Value> = reports
                .iter()
                .map(|r| json!({"start": r.best_start, "end": r.best_start + r.window, "count": r.count}))
                .collect();
            let mut done = if schedule.is_some() {
                Done::new(val(&reports), Value::Array(windows), Some(ok), Status::Found)
            } else {
                Done::new(val(&reports[0]), windows[0].clone(), Some(ok), Status::Found)
            };
            if schedule.is_some() {
                done.table = Some(Table {
                    header: vec!["window", "best_start", "count", "density"],
                    rows: reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.window.to_string(),
                                r.best_start.to_string(),
                                r.count.to_string(),
                                rational::to_pq(&r.density),
                            ]
                        })
                        .collect(),
                });
            }
            done
        }
        Operation::FindPoint { alpha, horizon, start, end } => {
            let (start, end) = (start.unwrap_or(0), end.unwrap_or(a.universe()));
            let point = find_regular_point(a, start, end, *alpha, *horizon)?;
            match &point {
                RegularPoint::Good(g) => Done::new(
                    json!({"outcome": "good_point", "x": g.x}),
                    val(&point),
                    Some(verify_good_point(g, a)),
                    Status::Found,
                ),
                RegularPoint::Partition(p) => Done::new(
                    json!({"outcome": "partition", "total": p.total(), "bound": rational::to_pq(&p.bound())}),
                    val(&point),
                    Some(verify_density_certificate(p, a)?),
                    Status::Negative,
                ),
            }
        }
        Operation::Ladder { k_max } => {
            let res = max_ladder(a, model, *k_max, budget)?;
            let result = json!({"k": res.k, "lower_bound_only": res.lower_bound_only, "nodes": res.nodes});
            match &res.certificate {
                Some(cert) => {
                    let ok = cert.len() == res.k && verify_ladder(cert, a, model)?;
                    Done::new(result, val(cert), Some(ok), Status::Found)
                }
                None => Done::new(result, Value::Null, None, Status::Negative),
            }
        }
        Operation::Witness { k, mode } => {
            let out = find_square_witness(a, model, *k, search_mode(*mode), budget)?;
            match &out {
                SquareOutcome::Found(w) => {
                    let ok = w.size() == *k && verify_square(w, a, model)?;
                    Done::new(val(&out), val(w), Some(ok), Status::Found)
                }
                SquareOutcome::NotFound { .. } => Done::new(val(&out), Value::Null, None, Status::Negative),
            }
        }
        Operation::Triangular { m, mode, scorer } => {
            let scorer = match scorer {
                ScorerName::PoolSize => Scorer::PoolSize,
                ScorerName::DensityWeighted => Scorer::DensityWeighted,
                ScorerName::Random => Scorer::Random(cfg.seed),
            };
            let out = find_triangular_witness(a, model, *m, search_mode(*mode), scorer, budget)?;
            match &out {
                TriangularOutcome::Found(w) => {
                    let ok = w.len() == *m && verify_triangular(w, a, model)?;
                    Done::new(val(&out), val(w), Some(ok), Status::Found)
                }
                TriangularOutcome::NotFound { .. } => Done::new(val(&out), Value::Null, None, Status::Negative),
            }
        }
        Operation::Upgrade { witness, m } => {
            let tri = match (witness, m) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
                    parse_witness_json(&text)?
                }
                (None, Some(m)) => {
                    match find_triangular_witness(a, model, *m, SearchMode::Exact, Scorer::PoolSize, budget)? {
                        TriangularOutcome::Found(w) => w,
                        miss @ TriangularOutcome::NotFound { .. } => {
                            return Ok(Done::new(val(&miss), Value::Null, None, Status::Negative));
                        }
                    }
                }
                _ => unreachable!("validated"),
            };
            let up = ramsey_upgrade(&tri, a, model)?;
            let ok = restricts(&tri, &up.indices, &up.upgraded)
                && match &up.upgraded {
                    Upgraded::Square(w) => verify_square(w, a, model)?,
                    Upgraded::Ladder(l) => verify_ladder(l, a, model)?,
                };
            let result = json!({"input": tri, "indices": up.indices, "size": up.indices.len()});
            Done::new(result, val(&up.upgraded), Some(ok), Status::Found)
        }
        Operation::Defwitness { family, n, step_max } => {
            let fam = match family {
                FamilyName::Intervals => Family::Intervals,
                FamilyName::Aps => Family::Progressions { step_max: step_max.unwrap_or(Family::DEFAULT_STEP_MAX) },
            };
            let out = definable_witness_search(a, model, fam, *n, budget)?;
            match &out {
                DefinableOutcome::Found(w) => {
                    let ok = verify_definable(w, a, model, *n)?;
                    let result = json!({
                        "status": "found",
                        "first": w.first.to_string(),
                        "second": w.second.to_string(),
                    });
                    Done::new(result, val(w), Some(ok), Status::Found)
                }
                DefinableOutcome::NotFound { .. } => Done::new(val(&out), Value::Null, None, Status::Negative),
            }
        }
        Operation::Growth { k_max, mode } => {
            let rows = growth_curve(a, model, *k_max, search_mode(*mode), budget)?;
            let mut ok = true;
            for row in &rows {
                if let Some(w) = &row.witness {
                    ok &= row.found && w.size() == row.k && verify_square(w, a, model)?;
                }
            }
            let witnesses: Vec<Value> = rows.iter().filter_map(|r| r.witness.as_ref().map(val)).collect();
            let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let table = Table {
                header: vec!["k", "found", "exhaustive", "b", "c"],
                rows: rows
                    .iter()
                    .map(|r| {
                        let (b, c) = r.witness.as_ref().map(|w| (join(&w.b), join(&w.c))).unwrap_or_default();
                        vec![r.k.to_string(), r.found.to_string(), r.exhaustive.to_string(), b, c]
                    })
                    .collect(),
            };
            let mut done = Done::new(val(&rows), Value::Array(witnesses), Some(ok), Status::Found);
            done.table = Some(table);
            done
        }
        Operation::Syndetic { core, shifts, t_max, mode } => {
            let req = CoverRequest {
                core: *core,
                shifts: *shifts,
                t_max: *t_max,
                mode: match mode {
                    Mode::Exact => CoverMode::Exact,
                    Mode::Heuristic => CoverMode::Greedy,
                },
                budget,
            };
            let out = min_translate_cover(a, model, &req)?;
            match &out {
                CoverOutcome::Cover(cert) => {
                    let ok = verify_cover(cert, a, model)?;
                    let result = json!({"status": "cover", "size": cert.size(), "optimal": cert.optimal});
                    Done::new(result, val(cert), Some(ok), Status::Found)
                }
                CoverOutcome::Infeasible { .. } => Done::new(val(&out), Value::Null, None, Status::Negative),
            }
        }
    })
}

/// Recounts every window of the report's length and confirms it is the
/// extreme one with the smallest start.
fn check_extreme(a: &DenseSet, r: &DensityReport, lower: bool) -> bool {
    let n = r.window;
    if n == 0 || n > a.universe() || r.density != Rational::new(r.count as i64, n as i64) {
        return false;
    }
    let mut first = None;
    for s in 0..=a.universe() - n {
        let c = a.bits().count_range(s, s + n);
        if (!lower && c > r.count) || (lower && c < r.count) {
            return false;
        }
        if c == r.count && first.is_none() {
            first = Some(s);
        }
    }
    first == Some(r.best_start)
}

fn restricts(tri: &TriangularWitness, indices: &[usize], up: &Upgraded) -> bool {
    let (b, c) = match up {
        Upgraded::Square(w) => (&w.b, &w.c),
        Upgraded::Ladder(l) => (&l.b, &l.c),
    };
    indices.windows(2).all(|w| w[0] < w[1])
        && indices.len() == b.len()
        && indices.len() == c.len()
        && indices.iter().zip(b).all(|(&i, &x)| tri.b.get(i) == Some(&x))
        && indices.iter().zip(c).all(|(&i, &x)| tri.c.get(i) == Some(&x))
}
