//! Benchmark runs over (instance x heuristic) cells, win counts and reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{build_interaction_graph, run_elimination_game};
use crate::model::{DopInstance, Score};
use crate::orderings::{HeuristicId, OrderingHeuristic};
use crate::solver::{solve, SolveStatus, SolverConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub heuristic: HeuristicId,
    pub order_time: f64,
    pub solve_time: f64,
    pub induced_width: usize,
    pub total_fill: usize,
    pub peak_cells: u64,
    pub status: SolveStatus,
    pub optimum: Score,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub repeats: usize,
    pub solver: SolverConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            repeats: 3,
            solver: SolverConfig::default(),
        }
    }
}

fn median(mut samples: Vec<Duration>) -> f64 {
    samples.sort_unstable();
    let mid = samples.len() / 2;
    let d = if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2
    };
    d.as_secs_f64()
}

/// Orders and solves every instance with every heuristic. Timings are the
/// median over `repeats` runs; all other fields are deterministic. Instances
/// that fail validation are skipped with a warning. Errors if two heuristics
/// reach different optima on the same instance.
pub fn run_benchmark(
    instances: &[DopInstance],
    heuristics: &[&dyn OrderingHeuristic],
    config: BenchConfig,
) -> Result<Vec<BenchRecord>> {
    let repeats = config.repeats.max(1);
    let mut records = Vec::with_capacity(instances.len() * heuristics.len());

    for inst in instances {
        let report = inst.validate();
        if !report.is_ok() {
            log::warn!("skipping instance {}: {}", inst.name, report.into_result().unwrap_err());
            continue;
        }
        let graph = build_interaction_graph(inst);
        let mut agreed: Option<(HeuristicId, Score)> = None;

        for h in heuristics {
            let mut order_times = Vec::with_capacity(repeats);
            let mut solve_times = Vec::with_capacity(repeats);
            let mut outcome = None;
            for _ in 0..repeats {
                let t = Instant::now();
                let ord = h.order(&graph);
                order_times.push(t.elapsed());
                let t = Instant::now();
                let res = solve(inst, &ord, config.solver)?;
                solve_times.push(t.elapsed());
                outcome = Some((ord, res));
            }
            let (ord, res) = outcome.expect("at least one repeat");
            let trace = run_elimination_game(&graph, &ord)?;

            if res.status == SolveStatus::Optimal {
                match agreed {
                    Some((first, value)) if value != res.optimum => {
                        return Err(Error::Bench(format!(
                            "instance {}: {} found optimum {} but {} found {}",
                            inst.name,
                            first,
                            value,
                            h.id(),
                            res.optimum
                        )));
                    }
                    None => agreed = Some((h.id(), res.optimum)),
                    _ => {}
                }
            }

            records.push(BenchRecord {
                instance: inst.name.clone(),
                n: inst.n(),
                m: inst.m(),
                heuristic: h.id(),
                order_time: median(order_times),
                solve_time: median(solve_times),
                induced_width: trace.induced_width,
                total_fill: trace.total_fill,
                peak_cells: res.stats.peak_cells,
                status: res.status,
                optimum: res.optimum,
            });
        }
    }
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    SolveTime,
    InducedWidth,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WinRow {
    pub heuristic: HeuristicId,
    pub wins: usize,
    pub percent: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WinTable {
    pub instances: usize,
    pub rows: Vec<WinRow>,
}

impl WinTable {
    pub fn wins(&self, id: HeuristicId) -> usize {
        self.rows.iter().find(|r| r.heuristic == id).map_or(0, |r| r.wins)
    }

    pub fn percent(&self, id: HeuristicId) -> f64 {
        self.rows.iter().find(|r| r.heuristic == id).map_or(0.0, |r| r.percent)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:<10} {:>5} {:>7}\n", "heuristic", "wins", "%");
        for row in &self.rows {
            writeln!(
                out,
                "{:<10} {:>5} {:>6.1}%",
                row.heuristic.label(),
                row.wins,
                row.percent
            )
            .unwrap();
        }
        out
    }
}

/// Groups records by instance name, preserving first-appearance order.
fn group_by_instance(records: &[BenchRecord]) -> Vec<(&str, Vec<&BenchRecord>)> {
    let mut groups: Vec<(&str, Vec<&BenchRecord>)> = Vec::new();
    for r in records {
        match groups.iter_mut().find(|(name, _)| *name == r.instance) {
            Some((_, rows)) => rows.push(r),
            None => groups.push((&r.instance, vec![r])),
        }
    }
    groups
}

fn metric_value(r: &BenchRecord, metric: Metric) -> f64 {
    match metric {
        Metric::InducedWidth => r.induced_width as f64,
        // a run that hit the width budget has no comparable solve time
        Metric::SolveTime if r.status != SolveStatus::Optimal && r.status != SolveStatus::Infeasible => f64::INFINITY,
        Metric::SolveTime => r.solve_time,
    }
}

/// Counts, per heuristic, the instances on which it attains the minimum of
/// `metric`. Tied heuristics all get the win.
pub fn summarize_wins(records: &[BenchRecord], metric: Metric) -> Result<WinTable> {
    let groups = group_by_instance(records);
    let mut heuristics: Vec<HeuristicId> = records.iter().map(|r| r.heuristic).collect();
    heuristics.sort_unstable();
    heuristics.dedup();

    let mut wins: BTreeMap<HeuristicId, usize> = heuristics.iter().map(|&h| (h, 0)).collect();
    for (name, rows) in &groups {
        let mut present: Vec<HeuristicId> = rows.iter().map(|r| r.heuristic).collect();
        present.sort_unstable();
        if present != heuristics {
            return Err(Error::Bench(format!(
                "instance {name} does not cover the same heuristics as the others"
            )));
        }
        let best = rows
            .iter()
            .map(|r| metric_value(r, metric))
            .fold(f64::INFINITY, f64::min);
        for r in rows {
            if metric_value(r, metric) == best {
                *wins.get_mut(&r.heuristic).unwrap() += 1;
            }
        }
    }

    let instances = groups.len();
    let rows = wins
        .into_iter()
        .map(|(heuristic, wins)| WinRow {
            heuristic,
            wins,
            percent: if instances == 0 {
                0.0
            } else {
                100.0 * wins as f64 / instances as f64
            },
        })
        .collect();
    Ok(WinTable { instances, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

pub const CSV_HEADER: &str =
    "instance,n,m,heuristic,order_time_s,solve_time_s,induced_width,total_fill,peak_cells,status,optimum";

fn sorted_groups(records: &[BenchRecord]) -> Vec<(&str, Vec<&BenchRecord>)> {
    let mut groups = group_by_instance(records);
    for (_, rows) in &mut groups {
        rows.sort_by_key(|r| r.heuristic);
    }
    groups
}

pub fn emit_report(records: &[BenchRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => emit_csv(records),
        ReportFormat::Markdown => emit_markdown(records),
    }
}

fn emit_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (_, rows) in sorted_groups(records) {
        for r in rows {
            writeln!(
                out,
                "{},{},{},{},{:.6},{:.6},{},{},{},{},{}",
                r.instance,
                r.n,
                r.m,
                r.heuristic,
                r.order_time,
                r.solve_time,
                r.induced_width,
                r.total_fill,
                r.peak_cells,
                r.status.token(),
                r.optimum
            )
            .unwrap();
        }
    }
    out
}

/// One row per instance with order+solve seconds per heuristic; the row
/// minimum (all of them, on ties) is set in bold.
fn emit_markdown(records: &[BenchRecord]) -> String {
    let mut out = String::from("| Test | n | m |");
    for h in HeuristicId::ALL {
        write!(out, " {} |", h.label()).unwrap();
    }
    out.push_str("\n|---|---:|---:|");
    for _ in HeuristicId::ALL {
        out.push_str("---:|");
    }
    out.push('\n');

    for (name, rows) in sorted_groups(records) {
        let time = |r: &BenchRecord| r.order_time + r.solve_time;
        let best = rows.iter().map(|r| time(r)).fold(f64::INFINITY, f64::min);
        write!(out, "| {} | {} | {} |", name, rows[0].n, rows[0].m).unwrap();
        for h in HeuristicId::ALL {
            match rows.iter().find(|r| r.heuristic == h) {
                Some(r) if time(r) == best => write!(out, " **{:.4}** |", time(r)).unwrap(),
                Some(r) => write!(out, " {:.4} |", time(r)).unwrap(),
                None => out.push_str(" - |"),
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(instance: &str, h: HeuristicId, width: usize, time: f64) -> BenchRecord {
        BenchRecord {
            instance: instance.into(),
            n: 4,
            m: 2,
            heuristic: h,
            order_time: 0.0,
            solve_time: time,
            induced_width: width,
            total_fill: 0,
            peak_cells: 8,
            status: SolveStatus::Optimal,
            optimum: Score::Finite(3),
        }
    }

    fn all(instance: &str, widths: [usize; 5]) -> Vec<BenchRecord> {
        HeuristicId::ALL
            .iter()
            .zip(widths)
            .map(|(&h, w)| rec(instance, h, w, w as f64))
            .collect()
    }

    #[test]
    fn unique_minimum_wins() {
        let table = summarize_wins(&all("a", [3, 3, 3, 2, 3]), Metric::InducedWidth).unwrap();
        assert_eq!(table.instances, 1);
        assert_eq!(table.wins(HeuristicId::MinFill), 1);
        assert_eq!(table.percent(HeuristicId::MinFill), 100.0);
        assert_eq!(table.wins(HeuristicId::Md), 0);
    }

    #[test]
    fn ties_award_everyone() {
        let table = summarize_wins(&all("a", [2; 5]), Metric::SolveTime).unwrap();
        assert!(table.rows.iter().all(|r| r.wins == 1));
    }

    #[test]
    fn inconsistent_coverage_is_an_error() {
        let mut records = all("a", [1; 5]);
        records.extend(all("b", [1; 5]).into_iter().take(4));
        let err = summarize_wins(&records, Metric::InducedWidth).unwrap_err();
        assert!(err.to_string().contains("instance b"));
    }

    #[test]
    fn width_exceeded_never_wins_on_time() {
        let mut records = all("a", [1, 2, 3, 4, 5]);
        records[0].status = SolveStatus::WidthExceeded {
            step: 0,
            vertex: 0,
            cells: 99,
        };
        let table = summarize_wins(&records, Metric::SolveTime).unwrap();
        assert_eq!(table.wins(HeuristicId::Md), 0);
        assert_eq!(table.wins(HeuristicId::Nd), 1);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(emit_report(&[], ReportFormat::Csv), format!("{CSV_HEADER}\n"));
        let records = vec![rec("x", HeuristicId::Mcs, 1, 0.5), rec("x", HeuristicId::Md, 2, 0.25)];
        let csv = emit_report(&records, ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "x,4,2,md,0.000000,0.250000,2,0,8,optimal,3");
        assert_eq!(lines[2], "x,4,2,mcs,0.000000,0.500000,1,0,8,optimal,3");
    }

    #[test]
    fn markdown_flags_minima() {
        let md = emit_report(&all("a", [2, 1, 1, 3, 4]), ReportFormat::Markdown);
        let row = md.lines().nth(2).unwrap();
        assert_eq!(
            row,
            "| a | 4 | 2 | 2.0000 | **1.0000** | **1.0000** | 3.0000 | 4.0000 |"
        );
    }
}
