use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("operation undefined on the empty diagram")]
    EmptyDiagram,
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("intervals do not bound a sub-diagram: chord {0} leaves the selected region")]
    NotASubDiagram(usize),
    #[error("rotation by {0} does not stabilize the diagram")]
    NotAStabilizer(usize),
    #[error("diagram is not analytic")]
    NotAnalytic,
    #[error("diagram or graph is not connected")]
    Disconnected,
    #[error("graph error: {0}")]
    InvalidGraph(String),
    #[error("invalid cordage: {0}")]
    InvalidCordage(String),
    #[error("budget exceeded: {what} = {value} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("coefficient {index} of {series} is not an integer: {value}")]
    NonIntegral {
        series: &'static str,
        index: usize,
        value: String,
    },
    #[error("invalid series argument: {0}")]
    InvalidSeries(String),
    #[error("bracket not confirmed: {0}")]
    BracketNotConfirmed(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid passport: {0}")]
    InvalidPassport(String),
}

pub type Result<T> = std::result::Result<T, Error>;
