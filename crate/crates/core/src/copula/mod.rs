//! Copula families, derived surfaces and sections.

mod family;
mod section;
mod surface;

pub use family::{CopulaError, DomainError, Family, FamilySpec};
pub use section::{SectionFn, SectionKind};
pub use surface::{CopulaSurface, Monotone};
