//! Reducing 10-minute readings to hourly means (circular mean for direction).
use chrono::{Duration, NaiveDate};
use mixcirc::cli::{hourly_aggregate, write_hourly_csv, TimedRecord};

fn main() -> mixcirc::Result<()> {
    let start = NaiveDate::from_ymd_opt(2024, 1, 1).unwrap().and_hms_opt(0, 0, 0).unwrap();
    let records: Vec<TimedRecord> = (0..36)
        .map(|i| {
            let time = start + Duration::minutes(10 * i);
            // direction drifts across north, where naive averaging fails
            let direction = (6.0 + 0.05 * i as f64).rem_euclid(std::f64::consts::TAU);
            TimedRecord { time, direction, linear: vec![4.0 + 0.1 * i as f64] }
        })
        .collect();
    let rows = hourly_aggregate(&records);
    write_hourly_csv(std::io::stdout(), &rows, "direction", &["speed".to_string()])
}
