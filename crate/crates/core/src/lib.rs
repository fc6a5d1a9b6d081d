//! Khovanov homology of singular links over F₂.
//!
//! A singular diagram `D` with double points `b₁, …, b_r` has a cube of
//! resolutions `{D_A}`, where `A ⊆ {1, …, r}` is the set of double points
//! resolved positively. Each `D_A` carries an ordinary Khovanov complex, and
//! each edge `A → A ∪ {b}` a genus-one chain map `Φ̂_b`; the complex of `D`
//! is the multiple mapping cone of this cube.
//!
//! ```
//! use skh_core::{diagram::parse_pd, homology::khovanov_homology};
//!
//! let trefoil = parse_pd("X+(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)").unwrap();
//! let kh = khovanov_homology(&trefoil).unwrap();
//! assert_eq!(kh.total_rank(), 6);
//! ```

pub mod chain;
pub mod diagram;
pub mod error;
pub mod f2;
pub mod frobenius;
pub mod homology;
pub mod khovanov;
pub mod polynomial;

pub use chain::{Bidegree, BigradedComplex, GradedChainMap};
pub use diagram::{parse_pd, SingularDiagram};
pub use error::{Error, Result};
pub use homology::{khovanov_homology, BettiTable};
pub use polynomial::LaurentPoly;
