//! Parameter grids: `0.1,0.2,0.5`, `lin:0:1:11` or `geom:1e-4:1e-2:3`.

use crate::CliError;

fn bad(msg: String) -> CliError {
    CliError::BadArguments(msg)
}

fn parse_number(s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| bad(format!("not a number: '{s}'")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(format!("not a finite number: '{s}'")))
    }
}

/// Parses a real-valued grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let text = text.trim();
    let (tag, rest) = match text.split_once(':') {
        Some((tag @ ("lin" | "geom"), rest)) => (Some(tag), rest),
        _ => (None, text),
    };
    let Some(tag) = tag else {
        return text.split(',').map(parse_number).collect();
    };
    let parts: Vec<&str> = rest.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(bad(format!(
            "range '{text}' must look like {tag}:start:stop:count"
        )));
    };
    let (start, stop) = (parse_number(start)?, parse_number(stop)?);
    let count: usize = count.trim().parse().map_err(|_| {
        bad(format!(
            "range count must be a positive integer in '{text}'"
        ))
    })?;
    if count == 0 {
        return Err(bad(format!("range count must be positive in '{text}'")));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let steps = (count - 1) as f64;
    match tag {
        "lin" => Ok((0..count)
            .map(|i| start + (stop - start) * i as f64 / steps)
            .collect()),
        _ => {
            if start <= 0.0 || stop <= 0.0 {
                return Err(bad(format!(
                    "geometric range '{text}' needs positive endpoints"
                )));
            }
            let ratio = (stop / start).ln();
            Ok((0..count)
                .map(|i| start * (ratio * i as f64 / steps).exp())
                .collect())
        }
    }
}

/// Parses a grid of positive integers; range points are rounded.
pub fn parse_int_grid(text: &str) -> Result<Vec<u64>, CliError> {
    let rounded = text.contains(':');
    parse_grid(text)?
        .into_iter()
        .map(|v| {
            let r = v.round();
            if !(1.0..=9.0e15).contains(&r) || (!rounded && r != v) {
                Err(bad(format!("'{v}' is not a positive integer")))
            } else {
                Ok(r as u64)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_grid("0.1, 0.3,1e-2").unwrap(), vec![0.1, 0.3, 0.01]);
        assert_eq!(parse_grid("-2").unwrap(), vec![-2.0]);
        assert!(parse_grid("0.1,,0.2").is_err());
        assert!(parse_grid("nan").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_grid("lin:-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        let g = parse_grid("geom:1e-4:1e-2:3").unwrap();
        assert!((g[1] - 1e-3).abs() < 1e-15 && g[0] == 1e-4);
        assert_eq!(parse_grid("lin:5:9:1").unwrap(), vec![5.0]);
        assert!(parse_grid("geom:0:1:3").is_err());
        assert!(parse_grid("lin:0:1").is_err());
        assert!(parse_grid("lin:0:1:0").is_err());
    }

    #[test]
    fn integer_grids() {
        assert_eq!(
            parse_int_grid("geom:1e3:1e5:3").unwrap(),
            vec![1000, 10_000, 100_000]
        );
        assert_eq!(parse_int_grid("2,3,1e4").unwrap(), vec![2, 3, 10_000]);
        assert!(parse_int_grid("2.5").is_err());
        assert!(parse_int_grid("0").is_err());
    }
}
