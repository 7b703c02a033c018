//! Angle arguments: plain numbers or multiples of pi such as `pi/3`, `2pi/3`,
//! `-3*pi/4` or `π/2`.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Radians,
    Degrees,
}

/// Parses an angle and returns it in radians. Multiples of pi are always
/// radians and are rejected in degree mode.
pub fn parse_angle(input: &str, unit: Unit) -> Result<f64, String> {
    let s: String = input.trim().to_ascii_lowercase().replace('π', "pi").split_whitespace().collect();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let value = match s.split_once("pi") {
        Some((coef, rest)) => {
            if unit == Unit::Degrees {
                return Err(format!("'{input}': multiples of pi are radians, drop --degrees"));
            }
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| format!("'{input}': bad coefficient '{c}'"))?,
            };
            let den = match rest {
                "" => 1.0,
                r => {
                    let d = r.strip_prefix('/').ok_or_else(|| format!("'{input}': expected '/' after pi"))?;
                    let d: f64 = d.parse().map_err(|_| format!("'{input}': bad denominator '{d}'"))?;
                    if d == 0.0 {
                        return Err(format!("'{input}': division by zero"));
                    }
                    d
                }
            };
            coef * PI / den
        }
        None => {
            let v: f64 = s.parse().map_err(|_| format!("'{input}' is not an angle"))?;
            match unit {
                Unit::Radians => v,
                Unit::Degrees => v.to_radians(),
            }
        }
    };
    if !value.is_finite() {
        return Err(format!("'{input}' is not finite"));
    }
    Ok(value)
}
