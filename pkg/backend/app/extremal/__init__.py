# Extremal module
