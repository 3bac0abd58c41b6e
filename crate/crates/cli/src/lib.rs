//! Front end for `nichols-core`: job specs, commands and reports.

pub mod app;
pub mod commands;
pub mod json;
pub mod spec;

use serde_json::{Map, Value};

pub use commands::{run, Check, Command, RMode};
pub use spec::{parse, JobSpec};

pub const MAX_DEGREE_ENV: &str = "NICHOLS_MAX_DEGREE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Bound(String),
    #[error(transparent)]
    Core(#[from] nichols_core::error::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    InputError,
    BoundExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::BoundExceeded => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::InputError => "INPUT_ERROR",
            Status::BoundExceeded => "BOUND_EXCEEDED",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl CliError {
    pub fn status(&self) -> Status {
        use nichols_core::error::Error as E;
        match self {
            CliError::Input(_) => Status::InputError,
            CliError::Bound(_) => Status::BoundExceeded,
            CliError::Core(e) => match e {
                E::DegreeBoundExceeded { .. }
                | E::DimensionBound(_)
                | E::SizeBoundExceeded(_)
                | E::OrbitBoundExceeded(_)
                | E::NotFinite(_)
                | E::NotIFinite { .. } => Status::BoundExceeded,
                E::PbwDefect(_) | E::DualityDefect(_) | E::SingularGram { .. } | E::NoNonzeroCandidate { .. } => {
                    Status::Fail
                }
                _ => Status::InputError,
            },
        }
    }
}

/// Text and JSON output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn new(command: &str, status: Status, text: String, mut fields: Map<String, Value>) -> Report {
        fields.insert("command".into(), Value::from(command));
        fields.insert("status".into(), Value::from(status.label()));
        Report {
            status,
            text: format!("{text}{}\n", status.label()),
            json: Value::Object(fields),
        }
    }

    pub fn error(command: &str, err: &CliError) -> Report {
        let mut fields = Map::new();
        fields.insert("error".into(), Value::from(err.to_string()));
        Report::new(command, err.status(), format!("error: {err}\n"), fields)
    }

    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// Parses the spec and runs the command; `env_degree` is the value of
/// [`MAX_DEGREE_ENV`], if set.
pub fn run_text(command: &Command, spec_text: &str, env_degree: Option<&str>) -> Report {
    let spec = match parse(spec_text) {
        Ok(s) => s,
        Err(e) => return Report::error(command.name(), &e),
    };
    let env = match env_degree.map(|s| s.trim().parse::<u32>()) {
        None => None,
        Some(Ok(d)) if d > 0 => Some(d),
        Some(_) => {
            let e = CliError::Input(format!("{MAX_DEGREE_ENV} must be a positive integer"));
            return Report::error(command.name(), &e);
        }
    };
    run(command, &spec, env)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let codes: Vec<i32> = [Status::Pass, Status::Fail, Status::InputError, Status::BoundExceeded]
            .iter()
            .map(|s| s.exit_code())
            .collect();
        assert_eq!(codes, vec![0, 1, 2, 3]);
        let e = CliError::Core(nichols_core::error::Error::DualityDefect("x".into()));
        assert_eq!(e.status(), Status::Fail);
        let e = CliError::Core(nichols_core::error::Error::SizeBoundExceeded(9));
        assert_eq!(e.status(), Status::BoundExceeded);
        let r = Report::error("roots", &CliError::Input("bad".into()));
        assert_eq!(r.json["status"], "INPUT_ERROR");
        assert!(r.text.ends_with("INPUT_ERROR\n"));
    }

    #[test]
    fn spec_validation() {
        assert!(parse(r#"{"conductor": 0, "braiding": [[1]]}"#).is_err());
        assert!(parse(r#"{"conductor": 3, "braiding": [[1]], "extra": 1}"#).is_err());
        assert!(parse(r#"{"conductor": 3, "braiding": [[1]], "options": {"max_degree": 0}}"#).is_err());
        assert!(parse(r#"{"conductor": 3, "braiding": [[1]], "options": {"start_letter": 2}}"#).is_err());
        let s = parse(r#"{"conductor": 6, "braiding": [[3]], "weights": [{"k": [[1, [1, 2]]], "l": [[0, -3]]}]}"#).unwrap();
        let chi = s.bichar().unwrap();
        let n = nichols_core::nichols::Nichols::full(&chi, 5).unwrap();
        let ws = s.module_weights(3, &nichols_core::hwmod::WeightSpec::standard(&n)).unwrap();
        assert_eq!(ws.len(), 3);
        let f = s.field();
        assert_eq!(ws[0].k_pow(&[1, 0, 0, 0]), &f.rational(1, 2).unwrap() * &f.root_of_unity(1));
        assert_eq!(ws[2].l_pow(&[1, 0, 0, 0]), f.integer(-3));
    }
}
