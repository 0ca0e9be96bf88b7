//! The `N = 100` table of `E` over `m ∈ {10,…,50}` and `ξ ∈ {0, 0.1, 0.2, 3}`.

use std::fmt::Write;

use dicke_core::squeezed::closed_form_report;
use dicke_core::SqueezedVacuumParams;

pub const N_ATOMS: u32 = 100;
pub const M_VALUES: [i32; 5] = [10, 20, 30, 40, 50];
pub const XI_VALUES: [f64; 4] = [0.0, 0.1, 0.2, 3.0];

/// Reference values, rows by `m`, columns by `ξ`.
pub const REFERENCE: [[f64; 4]; 5] = [
    [1_440_000.0, 22_357.14, 4_914.34, 0.0142],
    [1_102_500.0, 19_162.98, 4_189.47, 0.0109],
    [640_000.0, 13_943.33, 3_013.98, 0.0063],
    [202_500.0, 6_965.37, 1_470.5, 0.002],
    [0.0, 0.0, 0.0, 0.0],
];

pub const REL_TOLERANCE: f64 = 5e-3;
pub const ABS_TOLERANCE: f64 = 5e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub m: i32,
    pub xi: f64,
    pub computed: f64,
    pub reference: f64,
}

impl Cell {
    pub fn within_tolerance(&self) -> bool {
        (self.computed - self.reference).abs()
            <= (REL_TOLERANCE * self.reference.abs()).max(ABS_TOLERANCE)
    }
}

pub fn compute() -> Vec<Cell> {
    let mut cells = Vec::with_capacity(20);
    for (row, &m) in M_VALUES.iter().enumerate() {
        for (col, &xi) in XI_VALUES.iter().enumerate() {
            let params =
                SqueezedVacuumParams::new(N_ATOMS, 2 * m, xi).expect("table points are valid");
            let computed = closed_form_report(&params)
                .expect("table points are nondegenerate")
                .e_param;
            cells.push(Cell {
                m,
                xi,
                computed,
                reference: REFERENCE[row][col],
            });
        }
    }
    cells
}

fn format_e(e: f64) -> String {
    if e.abs() >= 100.0 {
        format!("{e:.2}")
    } else if e.abs() >= 1e-3 || e == 0.0 {
        format!("{e:.6}")
    } else {
        format!("{e:.3e}")
    }
}

/// `m | ξ E | ξ E | …` layout, one row per `m`.
pub fn render(cells: &[Cell]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>4}", "m");
    for _ in XI_VALUES {
        let _ = write!(out, " {:>5} {:>14}", "xi", "E");
    }
    out.push('\n');
    for row in cells.chunks(XI_VALUES.len()) {
        let _ = write!(out, "{:>4}", row[0].m);
        for cell in row {
            let _ = write!(out, " {:>5} {:>14}", cell.xi, format_e(cell.computed));
        }
        out.push('\n');
    }
    out
}

/// One line per cell outside tolerance.
pub fn mismatches(cells: &[Cell]) -> Vec<String> {
    cells
        .iter()
        .filter(|c| !c.within_tolerance())
        .map(|c| {
            format!(
                "m={} xi={}: computed {} reference {}",
                c.m, c.xi, c.computed, c.reference
            )
        })
        .collect()
}
