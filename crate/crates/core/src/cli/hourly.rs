//! Aggregation of sub-hourly readings to one row per calendar hour.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::io::Write;
use std::path::Path;

use chrono::{DateTime, NaiveDateTime, Timelike};
use serde::{Deserialize, Serialize};

use super::io::AngleUnit;
use crate::circular::wrap;
use crate::error::{Error, Result};

/// Timestamp layouts tried in order when no explicit format is given.
const TIME_FORMATS: &[&str] = &[
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%d %H:%M",
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%dT%H:%M",
    "%Y/%m/%d %H:%M:%S",
    "%Y/%m/%d %H:%M",
    "%d/%m/%Y %H:%M:%S",
    "%d/%m/%Y %H:%M",
];

pub fn parse_timestamp(text: &str, format: Option<&str>) -> Option<NaiveDateTime> {
    let text = text.trim();
    if let Some(f) = format {
        return NaiveDateTime::parse_from_str(text, f).ok();
    }
    TIME_FORMATS
        .iter()
        .find_map(|f| NaiveDateTime::parse_from_str(text, f).ok())
        .or_else(|| DateTime::parse_from_rfc3339(text).ok().map(|t| t.naive_local()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimedRecord {
    pub time: NaiveDateTime,
    /// Radians.
    pub direction: f64,
    pub linear: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HourlyRow {
    pub hour_start: NaiveDateTime,
    /// Hour of day (0–23).
    pub hour: u32,
    /// `hour · 2π/24`.
    pub hour_angle: f64,
    /// Circular mean direction, `None` when the group's resultant vanishes.
    pub direction: Option<f64>,
    pub linear: Vec<f64>,
    pub count: usize,
}

impl HourlyRow {
    pub fn flagged(&self) -> bool {
        self.direction.is_none()
    }
}

/// Groups by calendar hour: circular mean for the direction, arithmetic mean
/// for every linear column. Rows are returned in time order.
pub fn hourly_aggregate(records: &[TimedRecord]) -> Vec<HourlyRow> {
    let mut groups: BTreeMap<NaiveDateTime, Vec<&TimedRecord>> = BTreeMap::new();
    for r in records {
        let start = r
            .time
            .with_minute(0)
            .and_then(|t| t.with_second(0))
            .and_then(|t| t.with_nanosecond(0))
            .expect("truncating to the hour is always valid");
        groups.entry(start).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(start, group)| {
            let (s, c) = group
                .iter()
                .fold((0.0, 0.0), |(s, c), r| (s + r.direction.sin(), c + r.direction.cos()));
            let m = group.len() as f64;
            let direction = (s.hypot(c) > 1e-12 * m).then(|| wrap(s.atan2(c)));
            let width = group.first().map_or(0, |r| r.linear.len());
            let linear = (0..width)
                .map(|j| group.iter().map(|r| r.linear[j]).sum::<f64>() / m)
                .collect();
            let hour = start.hour();
            HourlyRow {
                hour_start: start,
                hour,
                hour_angle: hour as f64 * TAU / 24.0,
                direction,
                linear,
                count: group.len(),
            }
        })
        .collect()
}

/// Reads raw readings; rows with missing cells are skipped (count returned).
pub fn read_timed_csv(
    path: &Path,
    timestamp: &str,
    direction: &str,
    linear: &[String],
    unit: AngleUnit,
    time_format: Option<&str>,
) -> Result<(Vec<TimedRecord>, usize)> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let t_idx = find(timestamp)?;
    let d_idx = find(direction)?;
    let l_idx: Vec<usize> = linear.iter().map(|n| find(n)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut dropped = 0;
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        let cell = |i: usize| record.get(i).unwrap_or("").trim();
        if std::iter::once(t_idx).chain(std::iter::once(d_idx)).chain(l_idx.iter().copied()).any(|i| {
            matches!(cell(i), "" | "NA" | "NaN" | "nan")
        }) {
            dropped += 1;
            continue;
        }
        let parse_err = |column: &str, value: &str| Error::Parse {
            row: r + 1,
            column: column.to_string(),
            value: value.to_string(),
        };
        let time = parse_timestamp(cell(t_idx), time_format).ok_or_else(|| parse_err(timestamp, cell(t_idx)))?;
        let dir: f64 = cell(d_idx).parse().map_err(|_| parse_err(direction, cell(d_idx)))?;
        let lin = l_idx
            .iter()
            .zip(linear)
            .map(|(&i, name)| cell(i).parse::<f64>().map_err(|_| parse_err(name, cell(i))))
            .collect::<Result<Vec<f64>>>()?;
        out.push(TimedRecord {
            time,
            direction: unit.to_radians(dir),
            linear: lin,
        });
    }
    Ok((out, dropped))
}

/// Columns `timestamp,hour,hour_angle,<direction>,<linear…>,count,flagged`;
/// a flagged row leaves the direction cell empty.
pub fn write_hourly_csv<W: Write>(writer: W, rows: &[HourlyRow], direction: &str, linear: &[String]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["timestamp".to_string(), "hour".into(), "hour_angle".into(), direction.to_string()];
    header.extend(linear.iter().cloned());
    header.extend(["count".to_string(), "flagged".to_string()]);
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.hour_start.format("%Y-%m-%d %H:%M:%S").to_string(),
            r.hour.to_string(),
            r.hour_angle.to_string(),
            r.direction.map(|d| d.to_string()).unwrap_or_default(),
        ];
        rec.extend(r.linear.iter().map(|v| v.to_string()));
        rec.push(r.count.to_string());
        rec.push(r.flagged().to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::{Duration, NaiveDate};
    use std::f64::consts::PI;

    fn at(h: u32, m: u32) -> NaiveDateTime {
        NaiveDate::from_ymd_opt(2019, 1, 1).unwrap().and_hms_opt(h, m, 0).unwrap()
    }

    #[test]
    fn constant_direction() {
        let recs: Vec<TimedRecord> = (0..6)
            .map(|i| TimedRecord {
                time: at(5, 10 * i),
                direction: PI / 2.0,
                linear: vec![i as f64],
            })
            .collect();
        let rows = hourly_aggregate(&recs);
        assert_eq!(rows.len(), 1);
        assert!((rows[0].direction.unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(rows[0].linear, vec![2.5]);
        assert!((rows[0].hour_angle - 5.0 * TAU / 24.0).abs() < 1e-15);
    }

    #[test]
    fn seam_and_flagging() {
        let recs = vec![
            TimedRecord { time: at(0, 0), direction: 0.1, linear: vec![] },
            TimedRecord { time: at(0, 30), direction: TAU - 0.1, linear: vec![] },
            TimedRecord { time: at(1, 0), direction: 0.0, linear: vec![] },
            TimedRecord { time: at(1, 10), direction: PI, linear: vec![] },
        ];
        let rows = hourly_aggregate(&recs);
        let d = rows[0].direction.unwrap();
        assert!(d.min(TAU - d) < 1e-12);
        assert!(rows[1].flagged());
    }

    #[test]
    fn a_month_of_ten_minute_data() {
        let start = at(0, 0);
        let recs: Vec<TimedRecord> = (0..31 * 24 * 6)
            .map(|i| TimedRecord {
                time: start + Duration::minutes(10 * i),
                direction: 1.0,
                linear: vec![1.0, 2.0],
            })
            .collect();
        assert_eq!(recs.len(), 4464);
        assert_eq!(hourly_aggregate(&recs).len(), 744);
    }

    #[test]
    fn timestamp_formats() {
        assert_eq!(parse_timestamp("2019-01-01 05:10:00", None), Some(at(5, 10)));
        assert_eq!(parse_timestamp("2019/01/01 05:10", None), Some(at(5, 10)));
        assert_eq!(parse_timestamp("01-01-2019 05h10", Some("%d-%m-%Y %Hh%M")), Some(at(5, 10)));
        assert_eq!(parse_timestamp("yesterday", None), None);
    }
}
