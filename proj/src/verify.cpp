namespace mcpower {}
