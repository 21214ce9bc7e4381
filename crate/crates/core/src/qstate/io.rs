use serde_json::{json, Value};

use super::{Amp, FloatState, PureState};
use crate::codes::RingReal;
use crate::error::{Error, Result};

/// A target read from a state file: exact when every entry is a ring
/// literal, floating point as soon as one entry is a decimal number.
#[derive(Debug, Clone)]
pub enum TargetState {
    Exact(PureState),
    Approx(FloatState),
}

impl TargetState {
    pub fn qubits(&self) -> usize {
        match self {
            TargetState::Exact(s) => s.qubits(),
            TargetState::Approx(s) => s.qubits(),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Param(format!("state file: {}", msg.into()))
}

/// Parses `{ "n": int, "amps": [[re, im], …] }`.
pub fn parse_state_file(text: &str) -> Result<TargetState> {
    let v: Value = serde_json::from_str(text)?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing integer \"n\""))? as usize;
    let amps = v
        .get("amps")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"amps\""))?;
    let mut entries = Vec::with_capacity(amps.len());
    for a in amps {
        let pair = a
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| bad("each amplitude must be [re, im]"))?;
        entries.push([pair[0].clone(), pair[1].clone()]);
    }
    let exact = entries.iter().flatten().all(Value::is_string);
    if exact {
        let amps = entries
            .iter()
            .map(|[re, im]| {
                let re: RingReal = re.as_str().unwrap_or_default().parse()?;
                let im: RingReal = im.as_str().unwrap_or_default().parse()?;
                Ok(Amp::new(re, im))
            })
            .collect::<Result<Vec<_>>>()?;
        return PureState::new(n, amps).map(TargetState::Exact);
    }
    let to_f64 = |x: &Value| -> Result<f64> {
        match x {
            Value::Number(num) => num.as_f64().ok_or_else(|| bad("bad number")),
            Value::String(s) => Ok(s.parse::<RingReal>()?.to_f64()),
            _ => Err(bad("amplitude entries must be strings or numbers")),
        }
    };
    let amps = entries
        .iter()
        .map(|[re, im]| Ok((to_f64(re)?, to_f64(im)?)))
        .collect::<Result<Vec<_>>>()?;
    FloatState::new(n, amps).map(TargetState::Approx)
}

pub fn state_file_json(s: &PureState) -> Value {
    json!({ "n": s.qubits(), "amps": s.amps() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_file_round_trip() {
        let mut x = PureState::zeros(1);
        x.apply(crate::qstate::Gate::R, &[0]).unwrap();
        let text = state_file_json(&x).to_string();
        assert!(text.contains("\"3/5+0/1*r2\""));
        match parse_state_file(&text).unwrap() {
            TargetState::Exact(s) => assert_eq!(s, x),
            other => panic!("expected exact, got {other:?}"),
        }
    }

    #[test]
    fn decimal_entries_switch_to_float_mode() {
        let text = r#"{"n":1,"amps":[[0.6,0],["4/5+0/1*r2",0.0]]}"#;
        assert!(matches!(
            parse_state_file(text).unwrap(),
            TargetState::Approx(_)
        ));
    }

    #[test]
    fn malformed_files() {
        assert!(parse_state_file(r#"{"amps":[]}"#).is_err());
        assert!(parse_state_file(r#"{"n":1,"amps":[["1/1+0/1*r2"]]}"#).is_err());
        assert!(parse_state_file(
            r#"{"n":1,"amps":[["1/2+0/1*r2","0/1+0/1*r2"],["0/1+0/1*r2","0/1+0/1*r2"]]}"#
        )
        .is_err());
        assert!(parse_state_file(
            r#"{"n":1,"amps":[["oops","0/1+0/1*r2"],["0/1+0/1*r2","0/1+0/1*r2"]]}"#
        )
        .is_err());
    }
}
