//! satq-core: compile Boolean satisfiability instances into Grover phase
//! oracles under CNF and e-CNF encodings, lower them to Clifford+T, verify
//! them by exact statevector simulation, and report quantum resource costs.
//!
//! Pipeline: parse ([`parse`]) → transform ([`transform`]) → synthesize
//! ([`oracle`], [`grover`]) → lower ([`mcx`]) → simulate ([`sim`]) / emit
//! ([`qasm`]) / report ([`report`]).

pub mod circuit;
pub mod error;
pub mod formula;
pub mod grover;
pub mod mcx;
pub mod oracle;
pub mod parse;
pub mod qasm;
pub mod report;
pub mod sim;
pub mod transform;

pub use circuit::{Circuit, Control, Gate, GateCounts, QubitRegistry};
pub use error::{Error, Result};
pub use formula::{
    BoolExpr, Clause, CnfFormula, EcnfFormula, EsopClause, Formula, Literal, ModelCount, Monomial,
};
pub use grover::{assemble_grover, diffusion_gates, plan_iterations, GroverCircuit, GroverPlan};
pub use mcx::{decompose_mcx, mcx_cost, McxCost};
pub use oracle::{synthesize_oracle, FormulaKind, OracleCircuit};
pub use parse::{parse_dimacs, parse_ecnf, parse_expr, write_dimacs, write_ecnf, SourceFormat};
pub use report::{compare, measure, AccountingMode, ComparisonRow, ResourceEstimate};
pub use sim::{run, StateVector};
pub use transform::{
    clause_to_esop, cnf_to_ecnf, equivalence_to_esop, expr_to_ecnf, phi_family, tseitin_encode,
    EcnfResult, EquivRhs, PhiFamily, TseitinResult,
};
