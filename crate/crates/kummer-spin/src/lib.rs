pub mod exact_linalg;
pub mod lattice;
pub mod spinor;
pub mod triality;
pub mod fm;
pub mod report;
pub mod stabilizer;
pub mod cayley;
pub mod weil;
pub mod suites;
