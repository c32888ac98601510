//! Token parsing for complex values and sweep grids.

use num_complex::Complex64;

/// Parses `0.5`, `-2i`, `i` or `0.5+0.25i`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let bad = || format!("cannot read {s:?} as a complex number (expected e.g. 0.5 or 0.5+0.25i)");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return match t.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex64::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // the imaginary part starts at the last sign that is not an exponent sign
    let split = body
        .char_indices()
        .filter(|&(i, c)| (c == '+' || c == '-') && i > 0 && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().map_err(|_| bad())?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let z = Complex64::new(re, im);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// Real value; rejects a nonzero imaginary part.
pub fn real(s: &str) -> Result<f64, String> {
    let z = complex(s)?;
    if z.im != 0.0 {
        return Err(format!("{s:?} must be real"));
    }
    Ok(z.re)
}

/// Points `start + k step` of `start:stop:step`, with `stop` included when
/// it is hit within 1e-12.
pub fn grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(format!("grid {s:?} must look like start:stop:step"));
    };
    let (start, stop, step) = (real(start)?, real(stop)?, real(step)?);
    if step == 0.0 || (stop - start) * step < 0.0 {
        return Err(format!("step {step} does not lead from {start} to {stop}"));
    }
    let slack = 1e-12 * stop.abs().max(1.0);
    let mut n = ((stop - start) / step).floor() as usize;
    if ((start + (n + 1) as f64 * step) - stop).abs() <= slack {
        n += 1;
    }
    if n > 1_000_000 {
        return Err(format!("grid {s:?} has more than a million points"));
    }
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(complex("0.5+0.25i").unwrap(), Complex64::new(0.5, 0.25));
        assert_eq!(complex("-1-2i").unwrap(), Complex64::new(-1.0, -2.0));
        assert_eq!(complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("1e-3+2e-1i").unwrap(), Complex64::new(1e-3, 0.2));
        assert_eq!(complex("1e-3-2E+1i").unwrap(), Complex64::new(1e-3, -20.0));
        for bad in ["", "abc", "1+", "0.5+0.25j", "nan", "1+infi"] {
            assert!(complex(bad).is_err(), "{bad}");
        }
        assert!(real("1+1i").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(grid("0.5:5:0.5").unwrap().len(), 10);
        let g = grid("-5:5:0.1").unwrap();
        assert_eq!(g.len(), 101);
        assert!((g[100] - 5.0).abs() < 1e-12);
        assert_eq!(grid("25:200:25").unwrap(), vec![25.0, 50.0, 75.0, 100.0, 125.0, 150.0, 175.0, 200.0]);
        assert_eq!(grid("1:0:-0.5").unwrap(), vec![1.0, 0.5, 0.0]);
        assert_eq!(grid("0:1:0.3").unwrap().len(), 4);
        for bad in ["1:2", "0:1:0", "0:1:-1", "a:b:c"] {
            assert!(grid(bad).is_err(), "{bad}");
        }
    }
}
