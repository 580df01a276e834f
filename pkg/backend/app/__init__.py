# Polylink application package
