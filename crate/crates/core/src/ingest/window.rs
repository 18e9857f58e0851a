use std::fmt;

use chrono::{DateTime, Duration, NaiveDate, Utc};

use crate::error::{Error, Result};
use crate::ingest::FlowRecord;

/// Half-open UTC interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeWindow {
    start: DateTime<Utc>,
    end: DateTime<Utc>,
}

impl TimeWindow {
    pub fn new(start: DateTime<Utc>, end: DateTime<Utc>) -> Result<Self> {
        if start >= end {
            return Err(Error::Argument(format!(
                "window start {start} is not before end {end}"
            )));
        }
        Ok(Self { start, end })
    }

    /// The 24-hour window of a UTC calendar day.
    pub fn day(date: NaiveDate) -> Self {
        Self::days(date, 1).expect("one day is a non-empty window")
    }

    /// `count` whole UTC days starting at midnight of `first`.
    pub fn days(first: NaiveDate, count: u32) -> Result<Self> {
        let start = midnight(first);
        Self::new(start, start + Duration::days(i64::from(count)))
    }

    /// The `count` whole days ending just before midnight of `boundary`.
    pub fn days_before(boundary: NaiveDate, count: u32) -> Result<Self> {
        let end = midnight(boundary);
        Self::new(end - Duration::days(i64::from(count)), end)
    }

    pub fn start(&self) -> DateTime<Utc> {
        self.start
    }

    pub fn end(&self) -> DateTime<Utc> {
        self.end
    }

    pub fn contains(&self, instant: DateTime<Utc>) -> bool {
        self.start <= instant && instant < self.end
    }

    pub fn duration(&self) -> Duration {
        self.end - self.start
    }
}

impl fmt::Display for TimeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {})",
            super::format_timestamp(self.start),
            super::format_timestamp(self.end)
        )
    }
}

pub(crate) fn midnight(date: NaiveDate) -> DateTime<Utc> {
    date.and_hms_opt(0, 0, 0)
        .expect("midnight exists")
        .and_utc()
}

/// Records whose `window_start` lies in `window`, in their original order.
pub fn filter_window(records: &[FlowRecord], window: &TimeWindow) -> Vec<FlowRecord> {
    records
        .iter()
        .filter(|r| window.contains(r.window_start))
        .cloned()
        .collect()
}
