"""Classical groups over finite fields."""
