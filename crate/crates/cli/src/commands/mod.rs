pub mod check;
pub mod enumerate;
pub mod mutate;
pub mod report;
pub mod worksheet;
