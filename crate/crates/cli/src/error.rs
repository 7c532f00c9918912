use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pureres::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad invocations, 1 for failed computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
            CliError::Json(_) => "Json",
        }
    }

    /// `{"error": {"kind", "message"}}`.
    pub fn to_json(&self) -> String {
        let v = json!({"error": {"kind": self.kind(), "message": self.to_string()}});
        serde_json::to_string_pretty(&v).expect("JSON values serialize")
    }
}
