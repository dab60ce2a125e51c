use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::Path;

use serde::Serialize;

use circumlab::enumerate::labeled_graphs;
use circumlab::families::{audit_family, render_table, FamilySpec, SharpnessReport};
use circumlab::graph6::{emit_graph6, parse_graph6};
use circumlab::prover::{certified_long_cycle, validate_certificate, ProverError};

use crate::audit::{audit_line, Record, REPORT_SCHEMA_VERSION};
use crate::pipeline::OrderedPipeline;
use crate::{
    CertifyArgs, EnumerateArgs, ExtremalArgs, VerifyArgs, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION,
};

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open_input(path: Option<&Path>) -> io::Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) if p != Path::new("-") => Box::new(BufReader::new(File::open(p)?)),
        _ => Box::new(BufReader::new(io::stdin().lock())),
    })
}

fn pipeline(jobs: Option<usize>) -> Result<OrderedPipeline, i32> {
    OrderedPipeline::new(jobs).map_err(|e| {
        eprintln!("error: cannot start worker pool: {e}");
        EXIT_INPUT
    })
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

struct TableRow {
    line: usize,
    token: String,
    cells: [String; 9],
    violations: usize,
}

fn print_verify_table(rows: &[TableRow]) {
    let header = [
        "line", "graph6", "n", "δ", "κ", "p", "c", "ham", "T2", "T4", "case", "viol",
    ];
    let mut grid: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        let mut row = vec![r.line.to_string(), r.token.clone()];
        row.extend(r.cells.iter().cloned());
        row.push(r.violations.to_string());
        grid.push(row);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            grid.iter()
                .map(|row| row[i].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in &grid {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        println!("{}", line.join("  ").trim_end());
    }
}

pub fn verify(args: &VerifyArgs) -> i32 {
    let input = match open_input(args.file.as_deref()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!(
                "error: cannot read {}: {e}",
                args.file.as_ref().unwrap().display()
            );
            return EXIT_INPUT;
        }
    };
    let json_target = match (&args.output, args.table) {
        (Some(p), _) => Some(Some(p.as_path())),
        (None, false) => Some(None),
        (None, true) => None,
    };
    let mut out = match json_target.map(open_output).transpose() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: cannot open output: {e}");
            return EXIT_INPUT;
        }
    };
    let pipe = match pipeline(args.jobs.jobs) {
        Ok(p) => p,
        Err(code) => return code,
    };

    let mut read_error = None;
    let lines = input
        .lines()
        .enumerate()
        .map_while(|(i, line)| match line {
            Ok(s) => Some((i + 1, s)),
            Err(e) => {
                read_error = Some((i + 1, e));
                None
            }
        })
        .filter(|(_, s)| !s.trim().is_empty());

    let mut violations = 0usize;
    let mut strict_failure = false;
    let mut write_error = None;
    let mut rows = Vec::new();
    let stderr = io::stderr();
    let _ = pipe.run(
        lines,
        |(i, s)| audit_line(i, s.trim()),
        |record| {
            if let Some(out) = out.as_mut() {
                if let Err(e) = json_line(out.as_mut(), &record) {
                    write_error = Some(e);
                    return ControlFlow::Break(());
                }
            }
            match &record {
                Record::Audit(r) => {
                    if !r.violations.is_empty() {
                        violations += 1;
                        let _ = writeln!(stderr.lock(), "{}", r.graph6);
                    }
                    if args.table {
                        let status =
                            |k: usize| format!("{:?}", r.conditions[k].status).to_lowercase();
                        rows.push(TableRow {
                            line: r.line,
                            token: r.graph6.clone(),
                            cells: [
                                r.n.to_string(),
                                r.delta.to_string(),
                                r.kappa.to_string(),
                                r.p.to_string(),
                                r.c.to_string(),
                                if r.hamiltonian { "yes" } else { "no" }.to_string(),
                                status(2),
                                status(3),
                                r.certificate.as_ref().map_or("-".to_string(), |c| {
                                    let case = serde_json::to_value(c.case).unwrap_or_default();
                                    format!("{}:{}", case.as_str().unwrap_or("?"), c.achieved)
                                }),
                            ],
                            violations: r.violations.len(),
                        });
                    }
                }
                Record::Input(e) if args.strict => {
                    let _ = writeln!(stderr.lock(), "error: line {}: {}", e.line, e.error);
                    strict_failure = true;
                    return ControlFlow::Break(());
                }
                Record::Input(_) => {}
            }
            ControlFlow::Continue(())
        },
    );

    if let Some(out) = out.as_mut() {
        if let Err(e) = out.flush() {
            write_error.get_or_insert(e);
        }
    }
    if let Some(e) = write_error {
        eprintln!("error: cannot write report: {e}");
        return EXIT_INPUT;
    }
    if let Some((line, e)) = read_error {
        eprintln!("error: line {line}: {e}");
        return EXIT_INPUT;
    }
    if strict_failure {
        return EXIT_INPUT;
    }
    if args.table {
        print_verify_table(&rows);
    }
    if violations > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

pub fn enumerate(args: &EnumerateArgs) -> i32 {
    let mut graphs = match labeled_graphs(args.n, args.filter) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut out = match open_output(args.output.as_deref()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: cannot open output: {e}");
            return EXIT_INPUT;
        }
    };
    let written = graphs.try_for_each(|g| writeln!(out, "{}", emit_graph6(&g)));
    match written.and_then(|()| out.flush()) {
        Ok(()) => EXIT_OK,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            eprintln!("error: cannot write: {e}");
            EXIT_INPUT
        }
    }
}

#[derive(Serialize)]
struct VersionedReport<'a> {
    schema_version: u32,
    #[serde(flatten)]
    report: &'a SharpnessReport,
}

pub fn extremal(args: &ExtremalArgs) -> i32 {
    let specs: Vec<FamilySpec> = (args.delta.lo..=args.delta.hi)
        .flat_map(|delta| {
            args.family
                .iter()
                .map(move |&kind| FamilySpec { kind, delta })
        })
        .collect();
    let pipe = match pipeline(args.jobs.jobs) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let mut reports = Vec::with_capacity(specs.len());
    let mut error = None;
    let _ = pipe.run(specs.into_iter(), audit_family, |r| match r {
        Ok(report) => {
            reports.push(report);
            ControlFlow::Continue(())
        }
        Err(e) => {
            error = Some(e);
            ControlFlow::Break(())
        }
    });
    if let Some(e) = error {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }

    let json_target = match (&args.output, args.table) {
        (Some(p), _) => Some(Some(p.as_path())),
        (None, false) => Some(None),
        (None, true) => None,
    };
    if let Some(target) = json_target {
        let written = open_output(target).and_then(|mut out| {
            for report in &reports {
                json_line(
                    out.as_mut(),
                    &VersionedReport {
                        schema_version: REPORT_SCHEMA_VERSION,
                        report,
                    },
                )?;
            }
            out.flush()
        });
        if let Err(e) = written {
            eprintln!("error: cannot write report: {e}");
            return EXIT_INPUT;
        }
    }
    if args.table {
        print!("{}", render_table(&reports));
    }
    if reports.iter().all(SharpnessReport::passed) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

pub fn certify(args: &CertifyArgs) -> i32 {
    let g = match parse_graph6(args.token.trim()) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let cert = match certified_long_cycle(&g) {
        Ok(c) => c,
        Err(ProverError::NotTwoConnected { kappa, cut_vertex }) => {
            match cut_vertex {
                Some(v) => eprintln!("not 2-connected: kappa = {kappa}, cut vertex {v}"),
                None => eprintln!(
                    "not 2-connected: kappa = {kappa} (graph is disconnected or too small)"
                ),
            }
            return EXIT_VIOLATION;
        }
        Err(e @ ProverError::ResourceLimit(_)) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
        Err(e) => {
            eprintln!("certificate construction failed: {e}");
            return EXIT_VIOLATION;
        }
    };
    let written = open_output(args.output.as_deref())
        .and_then(|mut out| json_line(out.as_mut(), &cert).and_then(|()| out.flush()));
    if let Err(e) = written {
        eprintln!("error: cannot write certificate: {e}");
        return EXIT_INPUT;
    }
    if args.check {
        match validate_certificate(&cert) {
            Ok(check) => eprintln!(
                "certificate valid: achieved {}, guaranteed {} (t3 {})",
                check.achieved,
                check.guaranteed_t1,
                check
                    .guaranteed_t3
                    .map_or("n/a".to_string(), |t| t.to_string())
            ),
            Err(e) => {
                eprintln!("certificate rejected: {e}");
                return EXIT_VIOLATION;
            }
        }
    }
    EXIT_OK
}
