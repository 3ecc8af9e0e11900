//! Text mini-language for profiles, used by the CLI and the C bindings.
//!
//! A spec is a base family followed by pipeline modifiers:
//!
//! ```text
//! exp:l=1
//! example1:g=0,a=1,b=2
//! example2:a=1,b=1.2
//! trunc:m=2,u=1
//! williamson:m=2,atoms=0.5:1;2:0.25
//! csv:/path/to/profile.csv
//! example2:a=0.5,b=1|re|window:1,2
//! exp:l=1|pow:0.5|steklov:0.1
//! ```
//!
//! Modifiers: `pow:α` (t ↦ f(t^α)), `re`, `im`, `window:a,b`, `steklov:h`,
//! `scale:λ` (t ↦ f(λt)), `amp:c` (c·f).

use crate::error::{Error, Result};
use crate::profiles::{DiscreteMeasure, Profile};
use std::collections::BTreeMap;
use std::path::Path;

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let s = s.trim();
    match s {
        "inf" | "infinity" => Ok(f64::INFINITY),
        _ => s
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad number '{s}' for {what}"))),
    }
}

fn key_values(body: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in body.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got '{part}'")))?;
        out.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
    }
    Ok(out)
}

fn take<'a>(kv: &'a BTreeMap<String, String>, keys: &[&str], what: &str) -> Result<&'a str> {
    for k in keys {
        if let Some(v) = kv.get(*k) {
            return Ok(v);
        }
    }
    Err(Error::Parse(format!("missing parameter {what} ({})", keys.join("/"))))
}

fn parse_base(spec: &str) -> Result<Profile> {
    let (family, body) = match spec.split_once(':') {
        Some((f, b)) => (f.trim().to_ascii_lowercase(), b),
        None => (spec.trim().to_ascii_lowercase(), ""),
    };
    match family.as_str() {
        "exp" => {
            let kv = key_values(body)?;
            Profile::exp_decay(parse_f64(take(&kv, &["l", "lambda"], "lambda")?, "lambda")?)
        }
        "example1" => {
            let kv = key_values(body)?;
            Profile::example1(
                parse_f64(take(&kv, &["g", "gamma"], "gamma")?, "gamma")?,
                parse_f64(take(&kv, &["a", "alpha"], "alpha")?, "alpha")?,
                parse_f64(take(&kv, &["b", "beta"], "beta")?, "beta")?,
            )
        }
        "example2" => {
            let kv = key_values(body)?;
            Profile::example2(
                parse_f64(take(&kv, &["a", "alpha"], "alpha")?, "alpha")?,
                parse_f64(take(&kv, &["b", "beta"], "beta")?, "beta")?,
            )
        }
        "trunc" => {
            let kv = key_values(body)?;
            let m = take(&kv, &["m"], "m")?
                .parse::<u32>()
                .map_err(|_| Error::Parse("m must be a nonnegative integer".into()))?;
            Profile::trunc_power(m, parse_f64(take(&kv, &["u"], "u")?, "u")?)
        }
        "williamson" => {
            let kv = key_values(body)?;
            let m = take(&kv, &["m"], "m")?
                .parse::<u32>()
                .map_err(|_| Error::Parse("m must be a nonnegative integer".into()))?;
            let atoms_str = take(&kv, &["atoms"], "atoms")?;
            let mut atoms = Vec::new();
            for pair in atoms_str.split(';') {
                let (u, w) = pair
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("atom 'u:w' expected, got '{pair}'")))?;
                atoms.push((parse_f64(u, "atom position")?, parse_f64(w, "atom weight")?));
            }
            Profile::williamson_synthesize(&DiscreteMeasure::new(atoms)?, m)
        }
        "csv" => Profile::from_csv(Path::new(body.trim())),
        other => Err(Error::Parse(format!(
            "unknown profile family '{other}' \
             (expected exp, example1, example2, trunc, williamson, csv)"
        ))),
    }
}

/// Parse a profile spec string.
pub fn parse_profile(spec: &str) -> Result<Profile> {
    let mut stages = spec.split('|');
    let base = stages
        .next()
        .ok_or_else(|| Error::Parse("empty profile spec".into()))?;
    let mut profile = parse_base(base)?;
    for stage in stages {
        let stage = stage.trim();
        let (name, arg) = match stage.split_once(':') {
            Some((n, a)) => (n.trim().to_ascii_lowercase(), a.trim()),
            None => (stage.to_ascii_lowercase(), ""),
        };
        profile = match name.as_str() {
            "re" => profile.re(),
            "im" => profile.im(),
            "pow" => profile.compose_power(parse_f64(arg, "pow exponent")?)?,
            "steklov" => profile.steklov_smooth(parse_f64(arg, "steklov step")?)?,
            "scale" => profile.scaled(parse_f64(arg, "scale factor")?)?,
            "amp" => profile.amplitude_scaled(parse_f64(arg, "amplitude factor")?)?,
            "window" => {
                let (a, b) = arg
                    .split_once(',')
                    .ok_or_else(|| Error::Parse("window needs 'a,b'".into()))?;
                profile.windowed_tail(parse_f64(a, "window start")?, parse_f64(b, "window end")?)?
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown modifier '{other}' (expected re, im, pow, steklov, scale, amp, window)"
                )))
            }
        };
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn base_families_parse() {
        assert_relative_eq!(
            parse_profile("exp:l=2").unwrap().value(1.0).unwrap().re,
            (-2.0f64).exp(),
            max_relative = 1e-14
        );
        assert!(parse_profile("example1:g=0,a=1,b=2").is_ok());
        assert!(parse_profile("example2:a=1,b=1.2").unwrap().is_complex());
        assert!(parse_profile("trunc:m=2,u=1").is_ok());
        let w = parse_profile("williamson:m=2,atoms=1:1;2:3").unwrap();
        assert_relative_eq!(w.value(0.25).unwrap().re, 0.5625 + 3.0 * 0.25, max_relative = 1e-12);
    }

    #[test]
    fn modifiers_chain() {
        let p = parse_profile("exp:l=1|pow:0.5").unwrap();
        assert_relative_eq!(p.value(4.0).unwrap().re, (-2.0f64).exp(), max_relative = 1e-13);
        let p = parse_profile("example2:a=1,b=1|re").unwrap();
        assert!(!p.is_complex());
        assert!(parse_profile("example2:a=0.5,b=1|re|window:1,2").is_ok());
        assert!(parse_profile("exp:l=1|amp:-0.5").is_ok());
    }

    #[test]
    fn errors_name_the_problem() {
        assert!(matches!(parse_profile("gauss:s=1"), Err(Error::Parse(_))));
        assert!(matches!(parse_profile("exp:q=1"), Err(Error::Parse(_))));
        assert!(matches!(parse_profile("exp:l=abc"), Err(Error::Parse(_))));
        assert!(matches!(parse_profile("exp:l=1|fft"), Err(Error::Parse(_))));
    }
}
