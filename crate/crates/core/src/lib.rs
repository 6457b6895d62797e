pub mod acsv;
pub mod algnum;
pub mod expr;
pub mod groebner;
pub mod kronecker;
pub mod oracle;
pub mod univariate;
