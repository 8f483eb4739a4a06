class DependencyInjectionError(Exception):
    pass


class DependencyNotFound(DependencyInjectionError):
    def __init__(self, protocol, name=None):
        self.protocol = protocol
        self.name = name
