//! Number formatting and grid parsing shared by the subcommands.

pub const SIG_DIGITS: usize = 12;

/// `%.12g`, with `inf` for divergent values.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    } else {
        format!(
            "{}e{}{:02}",
            trim(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `0.9`, `0.5,0.7,1` or `start:stop:points`.
pub fn parse_lambdas(spec: &str) -> Result<Vec<f64>, String> {
    let values = if let Some((start, rest)) = spec.split_once(':') {
        let (stop, points) = rest
            .split_once(':')
            .ok_or_else(|| format!("grid must be start:stop:points, got '{spec}'"))?;
        let start = parse_real(start)?;
        let stop = parse_real(stop)?;
        let points: usize = points
            .trim()
            .parse()
            .map_err(|_| format!("point count must be a positive integer, got '{points}'"))?;
        linspace(start, stop, points)?
    } else {
        spec.split(',')
            .map(parse_real)
            .collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err("empty lambda list".into());
    }
    if let Some(bad) = values.iter().find(|l| !(**l > 0.0 && **l <= 1.0)) {
        return Err(format!("lambda must lie in (0, 1], got {bad}"));
    }
    Ok(values)
}

pub fn linspace(start: f64, stop: f64, points: usize) -> Result<Vec<f64>, String> {
    match points {
        0 => Err("a grid needs at least one point".into()),
        1 => Ok(vec![start]),
        _ => {
            let last = (points - 1) as f64;
            Ok((0..points)
                .map(|k| {
                    if k + 1 == points {
                        stop
                    } else {
                        start + (stop - start) * k as f64 / last
                    }
                })
                .collect())
        }
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format!("not a finite number: '{s}'"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(0.25), "0.25");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(2.0f64.sqrt() * 1e-7), "1.41421356237e-07");
        assert_eq!(num(123456789012345.0), "1.23456789012e+14");
        assert_eq!(num(-0.5), "-0.5");
        assert_eq!(num(f64::INFINITY), "inf");
        assert_eq!(num(0.00012345), "0.00012345");
    }

    #[test]
    fn lambda_specs() {
        assert_eq!(parse_lambdas("0.9").unwrap(), vec![0.9]);
        assert_eq!(parse_lambdas("0.5, 1").unwrap(), vec![0.5, 1.0]);
        let g = parse_lambdas("0.5:1:101").unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g[100], 1.0);
        assert!((g[50] - 0.75).abs() < 1e-15);
        assert!(parse_lambdas("0").is_err());
        assert!(parse_lambdas("1.2").is_err());
        assert!(parse_lambdas("0.5:1").is_err());
        assert!(parse_lambdas("0.5:1:0").is_err());
        assert!(parse_lambdas("x").is_err());
    }
}
