use copex::copula::CopulaError;
use copex::dependence::DependenceError;
use copex::empirical::EmpiricalError;
use copex::measures::MeasureError;
use copex::quad::QuadError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse '{token}': {reason}")]
    Parse { token: String, reason: String },
    #[error(transparent)]
    Input(#[from] EmpiricalError),
    #[error("{0} integral(s) did not converge")]
    NotConverged(usize),
    #[error("{0} table cell(s) disagree with the printed value")]
    TablesDisagree(usize),
    #[error("{0} inequality check(s) failed")]
    InequalityViolated(usize),
    #[error("{0}")]
    Runtime(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::NotConverged(_) => 3,
            CliError::TablesDisagree(_) => 4,
            CliError::InequalityViolated(_) => 5,
            _ => 1,
        }
    }

    pub fn parse(token: &str, reason: impl ToString) -> Self {
        CliError::Parse {
            token: token.to_string(),
            reason: reason.to_string(),
        }
    }
}

impl From<CopulaError> for CliError {
    fn from(e: CopulaError) -> Self {
        let token = match &e {
            CopulaError::UnknownFamily(t) | CopulaError::BadNumber(t) => t.clone(),
            CopulaError::Arity { family, .. } => family.to_string(),
            CopulaError::Domain(d) => format!("{}={}", d.param, d.value),
            CopulaError::SectionLevel(a) => a.to_string(),
        };
        CliError::parse(&token, e)
    }
}

pub fn is_not_converged(e: &DependenceError) -> bool {
    matches!(
        e,
        DependenceError::Measure(MeasureError::Quadrature(QuadError::NotConverged(_)))
    )
}
