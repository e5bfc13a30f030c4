# vibrakit/data/__init__.py
"""Sample decks, spectra and result files shipped with vibrakit"""
