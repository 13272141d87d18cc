pub mod pushout_oracle;
