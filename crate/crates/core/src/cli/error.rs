use std::fmt;

use crate::census::CensusError;
use crate::fillings::FillingError;
use crate::geometry::GeometryError;
use crate::io::IoError;
use crate::momdetect::MomError;
use crate::rigor::RigorError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Uncertifiable,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Parse => 2,
            ErrorKind::Precondition => 3,
            ErrorKind::Uncertifiable => 4,
            ErrorKind::Internal => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }

    /// Prefixes the message with the file it concerns.
    pub fn in_file(mut self, path: &std::path::Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ErrorKind::Parse => "parse error",
            ErrorKind::Precondition => "precondition failed",
            ErrorKind::Uncertifiable => "uncertifiable",
            ErrorKind::Internal => "internal inconsistency",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

impl std::error::Error for CliError {}

fn kind_of_rigor(e: &RigorError) -> ErrorKind {
    match e {
        RigorError::InvalidBounds { .. } | RigorError::Domain { .. } => ErrorKind::Precondition,
        RigorError::Degenerate { .. } | RigorError::Uncertifiable { .. } => {
            ErrorKind::Uncertifiable
        }
        RigorError::Inconsistent(_) => ErrorKind::Internal,
    }
}

fn kind_of_geometry(e: &GeometryError) -> ErrorKind {
    match e {
        GeometryError::Rigor(r) => kind_of_rigor(r),
        GeometryError::AmbiguousSpectrum(_) => ErrorKind::Uncertifiable,
        GeometryError::Inconsistent(_) => ErrorKind::Internal,
        GeometryError::BothAtInfinity
        | GeometryError::DegeneratePair { .. }
        | GeometryError::NoShadow
        | GeometryError::InvalidLattice(_)
        | GeometryError::InvalidSymmetry { .. }
        | GeometryError::Precondition(_) => ErrorKind::Precondition,
    }
}

impl From<RigorError> for CliError {
    fn from(e: RigorError) -> Self {
        CliError::new(kind_of_rigor(&e), e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::new(kind_of_geometry(&e), e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        let kind = match &e {
            IoError::Parse { .. } | IoError::Structural { .. } => ErrorKind::Parse,
            IoError::Geometry(g) => kind_of_geometry(g),
            IoError::Rigor(r) => kind_of_rigor(r),
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<MomError> for CliError {
    fn from(e: MomError) -> Self {
        let kind = match &e {
            MomError::Precondition(_) => ErrorKind::Precondition,
            MomError::Uncertifiable { .. } => ErrorKind::Uncertifiable,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        let kind = match &e {
            CensusError::Unsupported(_) => ErrorKind::Precondition,
            CensusError::Checkpoint(_) => ErrorKind::Parse,
            CensusError::Structural(_) => ErrorKind::Internal,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<FillingError> for CliError {
    fn from(e: FillingError) -> Self {
        match e {
            FillingError::Precondition(m) => CliError::new(
                ErrorKind::Precondition,
                format!("precondition violated: {m}"),
            ),
            FillingError::Rigor(r) => r.into(),
        }
    }
}
