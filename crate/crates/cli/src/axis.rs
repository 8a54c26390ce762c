use std::fmt;
use std::str::FromStr;

/// Values along one scan axis: a single number, `start:stop:count`, or a comma-separated
/// mix of both.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis(Vec<f64>);

impl Axis {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisError(String);

impl fmt::Display for AxisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for AxisError {}

fn number(s: &str) -> Result<f64, AxisError> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| AxisError(format!("'{s}' is not a number")))?;
    if !x.is_finite() {
        return Err(AxisError(format!("'{s}' is not finite")));
    }
    Ok(x)
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    let mut v: Vec<f64> = (0..count).map(|i| start + step * i as f64).collect();
    v[count - 1] = stop;
    v
}

impl FromStr for Axis {
    type Err = AxisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut values = Vec::new();
        for item in s.split(',') {
            let parts: Vec<&str> = item.split(':').collect();
            match parts.as_slice() {
                [x] => values.push(number(x)?),
                [a, b, n] => {
                    let (start, stop) = (number(a)?, number(b)?);
                    let count: usize = n
                        .trim()
                        .parse()
                        .map_err(|_| AxisError(format!("count '{n}' is not a non-negative integer")))?;
                    if count == 0 {
                        return Err(AxisError("count must be at least 1".into()));
                    }
                    if stop < start {
                        return Err(AxisError(format!("range {item}: stop is below start")));
                    }
                    values.extend(linspace(start, stop, count));
                }
                _ => return Err(AxisError(format!("malformed range '{item}', expected start:stop:count"))),
            }
        }
        Ok(Axis(values))
    }
}
