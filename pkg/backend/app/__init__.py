# Layered graph solver backend
