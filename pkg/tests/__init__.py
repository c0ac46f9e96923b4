"""Ultimate Debate tests."""
