pub mod delpezzo;
pub mod error;
pub mod exactfield;
pub mod oracle;
pub mod sampling;
pub mod scroll;
pub mod secant;
pub mod strata;

pub use error::{Error, Result};
pub use exactfield::{Elem, Field, LinearSubspace, Mat, QForm};
pub use scroll::{Scroll, ScrollPoint, ScrollSpec};
pub use secant::{classify, SecantOptions, SecantSignature, SecantType};
pub use strata::{stratum_geometric, MembershipReport, Memberships};
