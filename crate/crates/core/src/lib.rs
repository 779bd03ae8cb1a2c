//! Exact Morse-Barannikov reduction of filtered chain complexes over a field,
//! bifurcations along generic paths, and the framed-diagram formal problem.
//!
//! ```
//! use barannikov_core::{parse_complex, reduce};
//!
//! let c = parse_complex("field F2\ngenerator m 0 0\ngenerator q 1 1\ngenerator p 2 2\nboundary p : 1*q\n").unwrap();
//! let r = reduce(&c).unwrap();
//! assert_eq!(r.partner("p"), Some("q"));
//! ```

pub mod complex;
pub mod diagram;
pub mod formal;
pub mod linalg;
pub mod path;
pub mod random;
pub mod reduction;
pub mod scalar;
pub mod value;

pub use complex::{
    parse_complex, print_complex, BasisChange, BasisChangeError, Chain, ComplexError, FilteredComplex, Generator,
    Violation,
};
pub use diagram::{
    build_diagram, parse_frames, render_ascii, render_cerf, render_svg, Diagram, DiagramError, DiagramPoint, Frame,
    RenderSpec, YMode,
};
pub use formal::{
    apply_move, enumerate_moves, parse_diagram, print_diagram, solve, BirthBoundedSearch, Certificate, FormalError,
    FramedDiagram, FramedPoint, Move, Outcome, PairClass, PairKind, SolveOutcome,
};
pub use path::{
    apply_event, classify_transposition, parse_path, print_path, run_path, BifurcationCase, BifurcationReport,
    EventError, PathError, PathEvent, PathTrace, Side,
};
pub use reduction::{
    class_birth, class_death, homology_ranks, is_lower_by_elimination, persistence_rank_oracle, reduce,
    BarannikovResult, GeneratorType, Level, ReductionError,
};
pub use scalar::{FieldSpec, Scalar, ScalarError};
pub use value::Value;
