from .writers import ResultWriter, TABLE_FORMATS

__all__ = ['ResultWriter', 'TABLE_FORMATS']
