# Tests for convertible codes
