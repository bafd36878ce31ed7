"""Pure numerical services implementing the qubit models and checks."""
