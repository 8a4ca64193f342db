//! Gantt charts for network schedules and local circuits, as ASCII or SVG.

use std::fmt::Write;

use thiserror::Error;

use crate::circuit::{Circuit, GanttSchedule};
use crate::scheduler::{validate_schedule, Project, Schedule};

pub const DEFAULT_CELL_WIDTH: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("refusing to render an invalid schedule: {}", .0.join("; "))]
    InvalidSchedule(Vec<String>),
    #[error("cell width must be at least 1")]
    CellWidth,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bar {
    pub start: u32,
    pub end: u32,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lane {
    pub name: String,
    pub bars: Vec<Bar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub makespan: u32,
    pub lanes: Vec<Lane>,
}

impl Chart {
    pub fn is_empty(&self) -> bool {
        self.lanes.iter().all(|l| l.bars.is_empty())
    }
}

/// One lane per unit of every resource. Each activity is put on the lowest
/// free units of the resources it demands, visiting activities by start time.
pub fn network_chart(p: &Project, s: &Schedule) -> Result<Chart, RenderError> {
    let violations = validate_schedule(p, s);
    if !violations.is_empty() {
        return Err(RenderError::InvalidSchedule(
            violations.iter().map(ToString::to_string).collect(),
        ));
    }
    let mut lanes = Vec::new();
    let mut first_lane = Vec::new();
    for (r, &cap) in p.capacities.iter().enumerate() {
        first_lane.push(lanes.len());
        for u in 0..cap {
            lanes.push(Lane {
                name: format!("{}#{u}", p.resource_name(r)),
                bars: Vec::new(),
            });
        }
    }
    let mut free_at: Vec<u32> = vec![0; lanes.len()];
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&j| (s.starts[j], j));
    for j in order {
        let start = s.starts[j].expect("validated schedule is complete");
        let task = &p.activities[j];
        let end = start + task.duration;
        for &(r, units) in &task.demands {
            let lo = first_lane[r];
            let hi = lo + p.capacities[r] as usize;
            let mut taken = 0;
            for lane in lo..hi {
                if taken == units {
                    break;
                }
                if free_at[lane] <= start {
                    free_at[lane] = end;
                    lanes[lane].bars.push(Bar {
                        start,
                        end,
                        label: p.label(j),
                    });
                    taken += 1;
                }
            }
            debug_assert_eq!(taken, units);
        }
    }
    Ok(Chart {
        makespan: s.makespan,
        lanes,
    })
}

/// One lane per qubit; two-qubit gates appear on both of their lanes.
pub fn circuit_chart(c: &Circuit, g: &GanttSchedule) -> Result<Chart, RenderError> {
    let mut lanes: Vec<Lane> = (0..c.num_qubits())
        .map(|q| Lane {
            name: format!("q{q}"),
            bars: Vec::new(),
        })
        .collect();
    let mut problems = Vec::new();
    for e in &g.entries {
        let Some(gate) = c.gates().get(e.gate) else {
            problems.push(format!("unknown gate {}", e.gate));
            continue;
        };
        for &q in &gate.qubits {
            lanes[q].bars.push(Bar {
                start: e.start,
                end: e.end,
                label: gate.label(),
            });
        }
    }
    for lane in &mut lanes {
        lane.bars.sort_by_key(|b| (b.start, b.end));
        for w in lane.bars.windows(2) {
            if w[1].start < w[0].end {
                problems.push(format!(
                    "{} and {} overlap on {}",
                    w[0].label, w[1].label, lane.name
                ));
            }
        }
    }
    if !problems.is_empty() {
        return Err(RenderError::InvalidSchedule(problems));
    }
    Ok(Chart {
        makespan: g.horizon,
        lanes,
    })
}

fn bar_text(label: &str, width: usize) -> String {
    if width < 2 {
        return "#".repeat(width);
    }
    let inner = width - 2;
    let mut body: String = label.chars().take(inner).collect();
    while body.chars().count() < inner {
        body.push('-');
    }
    format!("[{body}]")
}

/// First line is the time axis; then one line per lane. The timeline part of
/// every line is `makespan * cell_width` characters wide. A chart without
/// bars renders as the axis line only.
pub fn render_ascii(chart: &Chart, cell_width: usize) -> Result<String, RenderError> {
    if cell_width == 0 {
        return Err(RenderError::CellWidth);
    }
    let name_width = chart
        .lanes
        .iter()
        .map(|l| l.name.chars().count())
        .max()
        .unwrap_or(0)
        .max(4);
    let columns = chart.makespan as usize * cell_width;
    let mut out = String::new();
    let mut axis = String::with_capacity(columns);
    for t in 0..chart.makespan {
        let cell: String = format!("{t:<cell_width$}")
            .chars()
            .take(cell_width)
            .collect();
        axis.push_str(&cell);
    }
    writeln!(out, "{:<name_width$}|{axis}", "t").unwrap();
    if chart.is_empty() {
        return Ok(out);
    }
    for lane in &chart.lanes {
        let mut row = vec!['.'; columns];
        for bar in &lane.bars {
            let from = bar.start as usize * cell_width;
            let text = bar_text(&bar.label, (bar.end - bar.start) as usize * cell_width);
            for (i, ch) in text.chars().enumerate() {
                row[from + i] = ch;
            }
        }
        let row: String = row.into_iter().collect();
        writeln!(out, "{:<name_width$}|{row}", lane.name).unwrap();
    }
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn fill(label: &str) -> &'static str {
    match label.chars().next() {
        Some('L') => "#8ecae6",
        Some('S') => "#ffb703",
        Some('M') => "#90be6d",
        Some('H') => "#cdb4db",
        Some('C') => "#f4a261",
        _ => "#d9d9d9",
    }
}

pub fn render_svg(chart: &Chart) -> String {
    const CELL: u32 = 40;
    const ROW: u32 = 24;
    const PAD: u32 = 4;
    let name_width = chart
        .lanes
        .iter()
        .map(|l| l.name.len() as u32)
        .max()
        .unwrap_or(0)
        * 8
        + 2 * PAD;
    let width = name_width + chart.makespan * CELL + PAD;
    let height = ROW * (chart.lanes.len() as u32 + 1) + PAD;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="11">"#
    )
    .unwrap();
    for t in 0..=chart.makespan {
        let x = name_width + t * CELL;
        writeln!(
            out,
            r##"<line x1="{x}" y1="{ROW}" x2="{x}" y2="{}" stroke="#cccccc"/>"##,
            height - PAD
        )
        .unwrap();
        writeln!(out, r#"<text x="{x}" y="{}">{t}</text>"#, ROW - 8).unwrap();
    }
    for (i, lane) in chart.lanes.iter().enumerate() {
        let y = ROW * (i as u32 + 1);
        writeln!(
            out,
            r#"<text x="{PAD}" y="{}">{}</text>"#,
            y + ROW / 2 + 4,
            escape(&lane.name)
        )
        .unwrap();
        for bar in &lane.bars {
            let x = name_width + bar.start * CELL;
            let w = (bar.end - bar.start) * CELL;
            writeln!(
                out,
                r##"<rect x="{x}" y="{}" width="{w}" height="{}" fill="{}" stroke="#333333"/>"##,
                y + 2,
                ROW - 4,
                fill(&bar.label)
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{}">{}</text>"#,
                x + PAD,
                y + ROW / 2 + 4,
                escape(&bar.label)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
