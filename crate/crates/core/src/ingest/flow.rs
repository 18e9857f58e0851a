use std::io::{Read, Write};

use chrono::{DateTime, Duration, DurationRound, Utc};

use crate::error::{Error, Result};

pub const FLOW_HEADER: [&str; 4] = ["origin_id", "destination_id", "window_start", "weight"];

/// Length of one observation window.
pub const OBSERVATION_HOURS: i64 = 8;

/// One origin to destination movement measurement in one 8-hour window.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowRecord {
    pub origin_id: String,
    pub destination_id: String,
    /// Start of the 8-hour window, aligned to 00:00, 08:00 or 16:00 UTC.
    pub window_start: DateTime<Utc>,
    /// Non-negative flow index.
    pub weight: f64,
}

pub(crate) fn format_timestamp(t: DateTime<Utc>) -> String {
    t.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

/// Parses an RFC 3339 timestamp, converts it to UTC and floors it to the
/// enclosing 8-hour observation window.
pub fn parse_window_start(text: &str) -> Option<DateTime<Utc>> {
    let instant = DateTime::parse_from_rfc3339(text).ok()?.with_timezone(&Utc);
    instant
        .duration_trunc(Duration::hours(OBSERVATION_HOURS))
        .ok()
}

fn check_header(headers: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let found: Vec<&str> = headers.iter().collect();
    if found != expected {
        return Err(Error::parse(
            1,
            "header",
            format!("expected `{}`, found `{}`", expected.join(","), found.join(",")),
        ));
    }
    Ok(())
}

pub(crate) fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

pub(crate) fn read_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let headers = rdr.headers().map_err(|e| csv_parse_error(e, "header"))?;
    check_header(headers, expected)
}

pub(crate) fn csv_parse_error(err: csv::Error, column: &str) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    match err.kind() {
        csv::ErrorKind::Utf8 { .. } => Error::parse(line, column, "input is not valid UTF-8"),
        _ => Error::Csv(err),
    }
}

pub(crate) fn row_line(row: &csv::StringRecord) -> u64 {
    row.position().map(|p| p.line()).unwrap_or(0)
}

pub(crate) fn check_width(row: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if row.len() != expected.len() {
        let column = expected.get(row.len()).copied().unwrap_or("<extra>");
        return Err(Error::parse(
            row_line(row),
            column,
            format!("expected {} fields, found {}", expected.len(), row.len()),
        ));
    }
    Ok(())
}

/// Reads the canonical flow CSV. Zero weights are kept; negative or
/// non-finite weights are rejected.
pub fn parse_flow_records<R: Read>(input: R) -> Result<Vec<FlowRecord>> {
    let mut rdr = reader(input);
    read_header(&mut rdr, &FLOW_HEADER)?;

    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| csv_parse_error(e, "row"))?;
        check_width(&row, &FLOW_HEADER)?;
        let line = row_line(&row);

        let origin_id = non_empty(&row[0], line, "origin_id")?;
        let destination_id = non_empty(&row[1], line, "destination_id")?;
        let window_start = parse_window_start(&row[2]).ok_or_else(|| {
            Error::parse(
                line,
                "window_start",
                format!("`{}` is not an RFC 3339 timestamp", &row[2]),
            )
        })?;
        let weight: f64 = row[3].parse().map_err(|_| {
            Error::parse(line, "weight", format!("`{}` is not a number", &row[3]))
        })?;
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::Validation(format!(
                "line {line}: weight {weight} must be a finite non-negative number"
            )));
        }

        records.push(FlowRecord {
            origin_id,
            destination_id,
            window_start,
            weight,
        });
    }
    Ok(records)
}

fn non_empty(field: &str, line: u64, column: &str) -> Result<String> {
    if field.is_empty() {
        Err(Error::parse(line, column, "empty region identifier"))
    } else {
        Ok(field.to_owned())
    }
}

pub fn write_flow_records<W: Write>(records: &[FlowRecord], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(FLOW_HEADER)?;
    for r in records {
        wtr.write_record([
            r.origin_id.as_str(),
            r.destination_id.as_str(),
            &format_timestamp(r.window_start),
            &r.weight.to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<flow output>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    const HEADER: &str = "origin_id,destination_id,window_start,weight\n";

    #[test]
    fn single_row_maps_fields() {
        let input = format!("{HEADER}A,B,2020-03-01T08:00:00Z,4.5\n");
        let records = parse_flow_records(input.as_bytes()).unwrap();
        assert_eq!(
            records,
            vec![FlowRecord {
                origin_id: "A".into(),
                destination_id: "B".into(),
                window_start: Utc.with_ymd_and_hms(2020, 3, 1, 8, 0, 0).unwrap(),
                weight: 4.5,
            }]
        );
    }

    #[test]
    fn negative_weight_is_a_validation_error() {
        let input = format!("{HEADER}A,B,2020-03-01T08:00:00Z,-1\n");
        let err = parse_flow_records(input.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn three_windows_of_one_pair_stay_separate() {
        let input = format!(
            "{HEADER}A,B,2020-03-01T00:00:00Z,1\nA,B,2020-03-01T08:00:00Z,2\nA,B,2020-03-01T16:00:00Z,3\n"
        );
        let records = parse_flow_records(input.as_bytes()).unwrap();
        assert_eq!(records.len(), 3);
        let hours: Vec<u32> = records
            .iter()
            .map(|r| chrono::Timelike::hour(&r.window_start))
            .collect();
        assert_eq!(hours, vec![0, 8, 16]);
    }

    #[test]
    fn zero_weight_rows_are_retained() {
        let input = format!("{HEADER}A,B,2020-03-01T00:00:00Z,0\n");
        assert_eq!(parse_flow_records(input.as_bytes()).unwrap()[0].weight, 0.0);
    }

    #[test]
    fn offsets_are_normalized_to_utc_windows() {
        let input = format!("{HEADER}A,B,2020-03-01T10:30:00+01:00,1\n");
        let r = &parse_flow_records(input.as_bytes()).unwrap()[0];
        assert_eq!(r.window_start, Utc.with_ymd_and_hms(2020, 3, 1, 8, 0, 0).unwrap());
    }

    #[test]
    fn unknown_timestamp_format_names_line_and_column() {
        let input = format!("{HEADER}A,B,2020-03-01T00:00:00Z,1\nA,B,01/03/2020 08:00,2\n");
        match parse_flow_records(input.as_bytes()).unwrap_err() {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, "window_start");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_rows_are_parse_errors() {
        let short = format!("{HEADER}A,B,2020-03-01T00:00:00Z\n");
        assert!(matches!(
            parse_flow_records(short.as_bytes()).unwrap_err(),
            Error::Parse { line: 2, ref column, .. } if column == "weight"
        ));
        let bad_weight = format!("{HEADER}A,B,2020-03-01T00:00:00Z,lots\n");
        assert!(matches!(
            parse_flow_records(bad_weight.as_bytes()).unwrap_err(),
            Error::Parse { ref column, .. } if column == "weight"
        ));
        let bad_header = "from,to,when,weight\n";
        assert!(matches!(
            parse_flow_records(bad_header.as_bytes()).unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn write_then_parse_is_field_exact() {
        let records = vec![
            FlowRecord {
                origin_id: "X,1".into(),
                destination_id: "Y".into(),
                window_start: Utc.with_ymd_and_hms(2020, 2, 29, 16, 0, 0).unwrap(),
                weight: 0.1 + 0.2,
            },
            FlowRecord {
                origin_id: "Y".into(),
                destination_id: "X,1".into(),
                window_start: Utc.with_ymd_and_hms(2020, 3, 1, 0, 0, 0).unwrap(),
                weight: 3.0,
            },
        ];
        let mut buf = Vec::new();
        write_flow_records(&records, &mut buf).unwrap();
        assert_eq!(parse_flow_records(buf.as_slice()).unwrap(), records);
    }
}
