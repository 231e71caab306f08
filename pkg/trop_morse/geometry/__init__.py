# Pure computation package