//! Parallel region maps and their CSV form.

use std::io::{Read, Write};

use absep_core::thresholds::{check_sweep_axes, Axis, RegionClass, RegionGrid, SweepMode};
use rayon::prelude::*;

use crate::error::CliError;

/// Same cells as [`absep_core::thresholds::sweep_region`], evaluated on the
/// rayon pool. Each cell is a pure function of its coordinates, so the
/// result does not depend on scheduling.
pub fn par_sweep(mode: SweepMode, axis1: Axis, axis2: Axis) -> Result<RegionGrid, CliError> {
    check_sweep_axes(mode, &axis1, &axis2)?;
    let n2 = axis2.len();
    let cells = (0..axis1.len() * n2)
        .into_par_iter()
        .map(|k| mode.evaluate(axis1.values[k / n2], axis2.values[k % n2]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RegionGrid::from_cells(axis1, axis2, cells)?)
}

/// Writes `axis1,axis2,class` rows in storage order.
pub fn write_csv<W: Write>(grid: &RegionGrid, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Parse(e.to_string());
    w.write_record(["axis1", "axis2", "class"]).map_err(csv_err)?;
    for (a, b, class) in grid.iter() {
        w.write_record([a.to_string(), b.to_string(), class.label().to_string()])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Parse(e.to_string()))
}

/// Reads rows written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<(f64, f64, RegionClass)>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| CliError::Parse(e.to_string()))?;
        let num = |i: usize| -> Result<f64, CliError> {
            record[i]
                .parse()
                .map_err(|_| CliError::Parse(format!("bad number {:?}", &record[i])))
        };
        let class = RegionClass::from_label(&record[2])
            .ok_or_else(|| CliError::Parse(format!("bad class {:?}", &record[2])))?;
        rows.push((num(0)?, num(1)?, class));
    }
    Ok(rows)
}
