# Common tests module
