pub mod algebra;
pub mod homoclinic;
pub mod symbolic;
pub mod toral;
