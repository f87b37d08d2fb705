pytest_plugins = ['exactcat.testing']
