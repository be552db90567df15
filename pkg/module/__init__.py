# Muench Workbench Module Package
