//! Parsing of CLI values: complex numbers and value-or-range sweeps.

use num_complex::Complex64;

/// Parses "1", "-0.5", "0.5+0.3i", "2i", "-1.5-0.25i".
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    let inner = t.strip_suffix(['i', 'I']).ok_or_else(|| {
        format!("cannot parse '{s}' as a complex number (expected forms: a, bi, a+bi)")
    })?;
    // pure imaginary: "i", "-i", "0.4i"
    if let Ok(im) = match inner {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        other => other.parse::<f64>(),
    } {
        return Ok(Complex64::new(0.0, im));
    }
    // split a+bi / a-bi at the sign of the imaginary part (skip a leading
    // sign and exponent signs)
    let bytes = inner.as_bytes();
    for pos in (1..bytes.len()).rev() {
        let c = bytes[pos] as char;
        if (c == '+' || c == '-') && !matches!(bytes[pos - 1] as char, 'e' | 'E') {
            let re: f64 = inner[..pos]
                .parse()
                .map_err(|_| format!("bad real part in '{s}'"))?;
            let im_str = &inner[pos..];
            let im: f64 = match im_str {
                "+" => 1.0,
                "-" => -1.0,
                other => other
                    .parse()
                    .map_err(|_| format!("bad imaginary part in '{s}'"))?,
            };
            return Ok(Complex64::new(re, im));
        }
    }
    Err(format!("cannot parse '{s}' as a complex number"))
}

/// Expands "a" to [a] and "start:stop:step" to the inclusive range swept
/// by `step` (stop is included within 1e-9 slack).
pub fn parse_sweep(s: &str) -> Result<Vec<f64>, String> {
    let t = s.trim();
    let parts: Vec<&str> = t.split(':').collect();
    match parts.len() {
        1 => {
            let v: f64 = t.parse().map_err(|_| format!("bad number '{s}'"))?;
            Ok(vec![v])
        }
        3 => {
            let start: f64 = parts[0].parse().map_err(|_| format!("bad start in '{s}'"))?;
            let stop: f64 = parts[1].parse().map_err(|_| format!("bad stop in '{s}'"))?;
            let step: f64 = parts[2].parse().map_err(|_| format!("bad step in '{s}'"))?;
            if step <= 0.0 {
                return Err(format!("step must be positive in '{s}'"));
            }
            let mut out = Vec::new();
            let mut i = 0usize;
            loop {
                let v = start + step * i as f64;
                if v > stop + 1e-9 {
                    break;
                }
                out.push(v);
                i += 1;
            }
            Ok(out)
        }
        _ => Err(format!("expected 'value' or 'start:stop:step', got '{s}'")),
    }
}

/// Formats a complex value the way [`parse_complex`] reads it.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
