# Identity checks and verification reports
